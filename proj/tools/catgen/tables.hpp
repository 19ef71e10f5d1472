// Copyright 2026 The Cislunar SDA Toolkit Authors
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

// Reference data for the bundled fixtures: the optimization target seeds,
// the reference constellation solutions, and their best/worst targets.

#ifndef CATGEN_TABLES_HPP
#define CATGEN_TABLES_HPP

#include <array>

namespace catgen {

struct SeedOrbit {
  const char* family;
  double period;  // TU; 0 for transfer states
  double state[6];
};

// 39 optimization target seeds: per periodic family the shortest, median and
// longest period member, plus three transfer states on the yz-plane.
inline constexpr std::array<SeedOrbit, 39> kTargetSeeds = {{
    {"BNO", 3.72656, {0.90216, 0.01025, 0.13052, 0.01993, -0.04143, 0.12319}},
    {"BNO", 2.75985, {1.01814, -0.02810, 0.13269, -0.04132, -0.04910, -0.22452}},
    {"BNO", 2.75700, {1.01044, -0.03199, 0.10003, -0.05800, -0.01358, -0.32851}},
    {"BSO", 3.72656, {1.07756, 0.00976, -0.12776, 0.03207, 0.01846, 0.15752}},
    {"BSO", 2.75985, {1.02520, -0.00984, -0.17047, -0.01205, -0.07941, 0.06354}},
    {"BSO", 2.75700, {1.01735, 0.02667, -0.13827, 0.03825, -0.05404, -0.20711}},
    {"L1NHO", 2.07099, {0.91645, -0.08732, 0.14063, -0.12360, 0.11120, 0.22361}},
    {"L1NHO", 2.15460, {0.93444, 0.10611, 0.09408, 0.15246, 0.02387, -0.29486}},
    {"L1NHO", 2.23455, {0.97875, 0.07001, -0.01981, 0.12094, -0.37603, -0.35903}},
    {"L1SHO", 2.07099, {0.89220, 0.04742, -0.18274, 0.06385, 0.19205, 0.10694}},
    {"L1SHO", 2.15460, {0.97850, 0.07201, 0.00754, 0.13248, -0.33956, 0.39185}},
    {"L1SHO", 2.23455, {0.91328, -0.10537, -0.12101, -0.13910, 0.09544, -0.24442}},
    {"L2NHO", 1.38944, {1.00411, -0.02869, 0.12826, -0.04318, -0.04435, -0.24523}},
    {"L2NHO", 2.17970, {1.06334, 0.04467, 0.18940, 0.04864, -0.16732, 0.09728}},
    {"L2NHO", 2.38349, {1.08295, 0.00159, 0.20231, 0.00162, -0.20101, 0.00288}},
    {"L2SHO", 1.38944, {0.98882, -0.01805, -0.01252, -0.07145, 0.42200, 0.90381}},
    {"L2SHO", 2.17970, {1.01834, -0.09432, -0.08417, -0.11375, 0.01927, 0.32480}},
    {"L2SHO", 2.38349, {1.06990, -0.06801, -0.17847, -0.07035, -0.16299, 0.13273}},
    {"R1:1O", 6.26635, {-0.12773, -0.89888, 0, -0.10385, 0.87765, 0}},
    {"R1:1O", 6.27397, {0.30808, -1.37988, 0, -1.07683, 0.26113, 0}},
    {"R1:1O", 6.27999, {0.22787, -1.39504, 0, -1.08227, 0.33668, 0}},
    {"R2:1O", 5.88685, {-0.53447, 0.06119, 0, -0.07469, -0.94045, 0}},
    {"R2:1O", 6.23346, {-0.27953, -0.31375, 0, 0.62241, -1.26808, 0}},
    {"R2:1O", 6.27998, {-0.22095, 1.01044, 0, 0.43976, 0.32928, 0}},
    {"R4:1O", 6.27997, {0.03900, -0.36447, 0, 1.15062, 0.70232, 0}},
    {"R4:1O", 6.27549, {-0.43950, -0.44017, 0, 0.21767, -0.11141, 0}},
    {"R4:1O", 6.27946, {-0.45983, 0.44568, 0, -0.31789, 0.22943, 0}},
    {"DRO", 0.15382, {0.98707, 0.01970, 0, 0.80343, 0.03198, 0}},
    {"DRO", 5.82922, {0.94147, 0.77868, 0, 0.58313, -0.17725, 0}},
    {"DRO", 6.27993, {0.20056, 1.38560, 0, 1.06003, 0.36870, 0}},
    {"LPEO", 1.34333, {1.06653, 0.00080, 0, -0.00294, 0.30862, 0}},
    {"LPEO", 1.67485, {1.04983, -0.06794, 0, 0.22149, 0.05401, 0}},
    {"LPEO", 2.56988, {1.12607, 0.02203, 0, -0.01593, 0.08709, 0}},
    {"LPWO", 0.19790, {0.98893, -0.02245, 0, 0.71085, 0.03489, 0}},
    {"LPWO", 1.20460, {0.92649, 0.04880, 0, -0.19084, -0.20955, 0}},
    {"LPWO", 2.14657, {0.87494, -0.04367, 0, 0.08386, -0.03495, 0}},
    {"L1TT", 0, {0, -0.28642, 0.03740, 1.93948, -0.26854, -0.32641}},
    {"L1TT", 0, {0, -0.57053, 0.04766, 0.83103, -0.06703, -0.32023}},
    {"L1TT", 0, {0, -0.36456, 0.03514, 1.53129, -0.19889, -0.40470}},
}};

// validation-set size per family after filtering
struct FamilyCount {
  const char* family;
  int count;
};

inline constexpr std::array<FamilyCount, 13> kFamilyCounts = {{
    {"BNO", 11}, {"BSO", 11}, {"DRO", 668}, {"L1NHO", 21}, {"L1SHO", 21},
    {"L2NHO", 170}, {"L2SHO", 170}, {"LPEO", 447}, {"LPWO", 924},
    {"R1:1O", 276}, {"R2:1O", 696}, {"R4:1O", 539}, {"L1TT", 19},
}};

struct ConstellationRowData {
  const char* stp;
  const char* family;
  double period;
  double state[6];
};

inline constexpr ConstellationRowData kBaselineRow = {
    "baseline", "NRHO", 1.48, {1.0192, 0.0084, -0.1785, 0.0109, -0.0964, -0.0445}};

// low-fidelity constellation solutions
inline constexpr std::array<ConstellationRowData, 13> kConstellationsLow = {{
    kBaselineRow,
    {"stp-a", "L2NHO", 1.42034, {1.01059, -0.02336, 0.15508, -0.03225, -0.07038, -0.15740}},
    {"stp-a", "L2SHO", 2.18236, {1.05129, -0.07285, -0.16417, -0.08092, -0.12861, 0.17317}},
    {"stp-a", "R2:1O", 6.26478, {0.12436, -0.71102, 0, 0, -0.58951, 0}},
    {"stp-a", "DRO", 0.31476, {0.97797, 0.03082, 0, 0.61175, 0.19864, 0}},
    {"stp-b", "L2NHO", 1.42034, {1.01059, -0.02336, 0.15508, -0.03225, -0.07038, -0.15740}},
    {"stp-b", "L2SHO", 2.35117, {1.00808, 0.09471, -0.03304, 0.10807, 0.15115, -0.37438}},
    {"stp-b", "R4:1O", 6.27538, {0.18900, 0, 0, 0, 2.50444, 0}},
    {"stp-b", "LPEO", 1.92854, {0.88714, 0.04674, 0, -0.12273, -0.04305, 0}},
    {"stp-c", "BSO", 3.73313, {0.90452, 0, -0.14384, 0, -0.05031, 0}},
    {"stp-c", "L2NHO", 1.42034, {1.01059, -0.02336, 0.15508, -0.03225, -0.07038, -0.15740}},
    {"stp-c", "L2SHO", 2.18236, {1.05129, -0.07285, -0.16417, -0.08092, -0.12861, 0.17317}},
    {"stp-c", "R4:1O", 6.27542, {0.35512, -0.43599, 0, 0.43122, 0.08299, 0}},
}};

// high-fidelity constellation solutions
inline constexpr std::array<ConstellationRowData, 13> kConstellationsHigh = {{
    kBaselineRow,
    {"stp-a", "L2SHO", 1.45344, {0.99772, -0.03692, -0.07986, -0.06613, 0.02110, 0.40552}},
    {"stp-a", "R2:1O", 6.27070, {-0.15705, -0.98967, 0, -0.36541, 0.24333, 0}},
    {"stp-a", "R4:1O", 6.27586, {0.40259, -0.44657, 0, 0.31213, -0.02049, 0}},
    {"stp-a", "LPWO", 1.65200, {0.87264, -0.02046, 0, 0.03737, -0.11888, 0}},
    {"stp-b", "L2SHO", 1.45344, {0.99772, -0.03692, -0.07986, -0.06613, 0.02110, 0.40552}},
    {"stp-b", "R4:1O", 6.27650, {-0.41703, 0.08243, 0, 0.41557, -1.06990, 0}},
    {"stp-b", "LPEO", 1.67328, {1.09913, 0, 0, -1.90e-14, 0.16932, 0}},
    {"stp-b", "LPWO", 2.06136, {0.88147, 0.04539, 0, -0.10630, -0.03484, 0}},
    {"stp-c", "L2SHO", 2.37810, {1.06040, -0.08494, -0.16070, -0.08875, -0.13340, 0.17647}},
    {"stp-c", "R2:1O", 6.27070, {-0.15705, -0.98967, 0, -0.36541, 0.24333, 0}},
    {"stp-c", "R4:1O", 6.27650, {-0.41703, 0.08243, 0, 0.41557, -1.06990, 0}},
    {"stp-c", "LPWO", 1.51512, {1.01427, 0, 0, -1.52e-14, 0.82818, 0}},
}};

struct BestWorstRowData {
  const char* stp;
  const char* which;
  const char* family;
  double period;
  double state[6];
};

inline constexpr std::array<BestWorstRowData, 8> kBestWorstLow = {{
    {"baseline", "best", "LPWO", 0.22451, {0.97333, 0.01959, 0, -0.54626, -0.40633, 0}},
    {"baseline", "worst", "R1:1O", 6.27578, {0.15585, -1.33939, 0, -0.97105, 0.43428, 0}},
    {"stp-a", "best", "LPWO", 0.25211, {0.98329, 0.02589, 0, -0.64209, -0.11315, 0}},
    {"stp-a", "worst", "R1:1O", 6.27387, {-0.16035, 1.00472, 0, 0.30638, 0.84852, 0}},
    {"stp-b", "best", "LPWO", 0.30606, {0.97149, -0.02485, 0, 0.50671, -0.33584, 0}},
    {"stp-b", "worst", "R1:1O", 6.27709, {0.36954, 1.40995, 0, 1.14308, 0.18072, 0}},
    {"stp-c", "best", "LPWO", 0.25640, {0.96200, 0.00591, 0, -0.14431, -0.63486, 0}},
    {"stp-c", "worst", "R1:1O", 6.27833, {-0.18097, -1.05186, 0, -0.39482, 0.84371, 0}},
}};

inline constexpr std::array<BestWorstRowData, 8> kBestWorstHigh = {{
    {"baseline", "best", "DRO", 0.09373, {0.98790, -0.01407, 0, -0.94290, -0.00297, 0}},
    {"baseline", "worst", "R2:1O", 6.19203, {-0.24127, -0.50917, 0, 0.49928, -0.74750, 0}},
    {"stp-a", "best", "DRO", 0.09798, {0.97585, 0.00813, 0, 0.52119, 0.77041, 0}},
    {"stp-a", "worst", "R1:1O", 6.27628, {-0.19185, 0.73649, 0, -0.25470, 0.98836, 0}},
    {"stp-b", "best", "LPWO", 0.22179, {0.97216, -0.01841, 0, 0.51976, -0.44460, 0}},
    {"stp-b", "worst", "DRO", 6.27971, {0.67698, -1.42470, 0, -1.26185, -0.18278, 0}},
    {"stp-c", "best", "LPWO", 1.52186, {0.98176, 0.04731, 0, -0.45863, 0.25174, 0}},
    {"stp-c", "worst", "R2:1O", 6.27671, {0.03235, 0.44718, 0, -0.94585, -0.99303, 0}},
}};

}  // namespace catgen

#endif  // CATGEN_TABLES_HPP
