// Copyright 2026 The loadcluster Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOADCLUSTER_RNG_H_
#define LOADCLUSTER_RNG_H_

#include <cstdint>
#include <random>

namespace loadcluster {

using Rng = std::mt19937_64;

// splitmix64 finalizer; gives every (master seed, stream index) pair its own
// well-separated generator seed so parallel runs never share a stream.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng MakeRng(std::uint64_t master, std::uint64_t stream) {
  return Rng(DeriveSeed(master, stream));
}

}  // namespace loadcluster

#endif  // LOADCLUSTER_RNG_H_
