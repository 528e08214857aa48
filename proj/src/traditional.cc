// Copyright 2026 The g2pm Authors
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

#include <algorithm>
#include <array>

#include "g2pm/corpus.h"

namespace g2pm {

namespace {

// Common traditional-only forms, sorted by code point.
constexpr std::array<char32_t, 353> kTraditional = {
    0x4F86, 0x500B, 0x5011, 0x50B3, 0x5247, 0x5275, 0x5283, 0x5289, 0x528D,
    0x52D5, 0x52DD, 0x52DE, 0x52E2, 0x5340, 0x5354, 0x5433, 0x54E1, 0x554F,
    0x55AE, 0x570B, 0x5834, 0x5B6B, 0x5B78, 0x5BE6, 0x5BEB, 0x5C0D, 0x5CF6,
    0x5DBC, 0x5E2B, 0x5EE0, 0x5EE3, 0x5EF3, 0x5F35, 0x5F8C, 0x5F9E, 0x611B,
    0x6642, 0x66F8, 0x6703, 0x6771, 0x694A, 0x696D, 0x6A5F, 0x6B72, 0x6B77,
    0x6BBA, 0x6BC0, 0x6C23, 0x6E9D, 0x6EFF, 0x6F22, 0x6F54, 0x6FD5, 0x6FDF,
    0x7063, 0x70BA, 0x7121, 0x71B1, 0x71C8, 0x71DF, 0x722D, 0x723A, 0x7368,
    0x7372, 0x73FE, 0x74B0, 0x7522, 0x756B, 0x7576, 0x767C, 0x76E1, 0x76E3,
    0x76E4, 0x773E, 0x790E, 0x7926, 0x79AA, 0x79AE, 0x7A2E, 0x7A31, 0x7A4D,
    0x7A69, 0x7AAE, 0x7AF6, 0x7B46, 0x7BC0, 0x7BC4, 0x7BC9, 0x7C21, 0x7CE7,
    0x7D00, 0x7D04, 0x7D05, 0x7D19, 0x7D1A, 0x7D30, 0x7D42, 0x7D44, 0x7D50,
    0x7D55, 0x7D61, 0x7D66, 0x7D71, 0x7D72, 0x7D93, 0x7D9C, 0x7DA0, 0x7DAB,
    0x7DAD, 0x7DB2, 0x7DCA, 0x7DDA, 0x7DE8, 0x7DF4, 0x7E23, 0x7E3D, 0x7E3E,
    0x7E54, 0x7E69, 0x7E7C, 0x7E8C, 0x7E96, 0x7F70, 0x7F77, 0x7F85, 0x7FA9,
    0x7FD2, 0x8056, 0x806F, 0x8072, 0x8077, 0x807D, 0x8085, 0x8105, 0x8166,
    0x8173, 0x819A, 0x81C9, 0x81FA, 0x8207, 0x8208, 0x8209, 0x820A, 0x8266,
    0x8449, 0x856D, 0x85CD, 0x85DD, 0x85E5, 0x8607, 0x862D, 0x8655, 0x865F,
    0x87F2, 0x8853, 0x885B, 0x885D, 0x88DC, 0x8907, 0x898B, 0x898F, 0x8996,
    0x89AA, 0x89BA, 0x89C0, 0x8A02, 0x8A08, 0x8A0E, 0x8A13, 0x8A18, 0x8A2A,
    0x8A2D, 0x8A31, 0x8A55, 0x8A66, 0x8A69, 0x8A71, 0x8A72, 0x8A73, 0x8A8D,
    0x8A9E, 0x8AA4, 0x8AAA, 0x8AB2, 0x8ABF, 0x8AC7, 0x8ACB, 0x8AD6, 0x8AF8,
    0x8B49, 0x8B58, 0x8B80, 0x8B93, 0x8C50, 0x8C93, 0x8C9D, 0x8CA0, 0x8CA1,
    0x8CA2, 0x8CA7, 0x8CA8, 0x8CA9, 0x8CAC, 0x8CAF, 0x8CB4, 0x8CB7, 0x8CBB,
    0x8CBC, 0x8CC0, 0x8CC7, 0x8CCA, 0x8CD3, 0x8CE3, 0x8CEA, 0x8CF4, 0x8CFA,
    0x8CFD, 0x8D0F, 0x8D95, 0x8D99, 0x8DA8, 0x8E8D, 0x8ECA, 0x8ECC, 0x8ECD,
    0x8EDF, 0x8F03, 0x8F09, 0x8F15, 0x8F1B, 0x8F2A, 0x8F38, 0x8F49, 0x8FA6,
    0x8FB2, 0x9019, 0x9023, 0x9032, 0x904B, 0x904E, 0x9054, 0x9055, 0x905E,
    0x9060, 0x9069, 0x9072, 0x9077, 0x9078, 0x907A, 0x9084, 0x908A, 0x90F5,
    0x9109, 0x9127, 0x912D, 0x9130, 0x91AB, 0x91CB, 0x91DD, 0x9234, 0x925B,
    0x9280, 0x9285, 0x92D2, 0x92EA, 0x92FC, 0x9304, 0x9322, 0x932F, 0x934B,
    0x9375, 0x93AE, 0x93E1, 0x9418, 0x9435, 0x9577, 0x9580, 0x9583, 0x9589,
    0x958B, 0x9593, 0x95B1, 0x95C6, 0x95CA, 0x95DC, 0x9663, 0x9670, 0x9673,
    0x9678, 0x967D, 0x968A, 0x968E, 0x969B, 0x96A8, 0x96AA, 0x96B1, 0x96BB,
    0x96D6, 0x96D9, 0x96DC, 0x96DE, 0x96E2, 0x96E3, 0x96F2, 0x96FB, 0x975C,
    0x97D3, 0x9801, 0x9802, 0x9805, 0x9806, 0x9808, 0x9810, 0x9818, 0x982D,
    0x983B, 0x984C, 0x984D, 0x984F, 0x98A8, 0x98DB, 0x98EF, 0x98F2, 0x98FD,
    0x9905, 0x9928, 0x9952, 0x99AC, 0x9A45, 0x9A57, 0x9A5A, 0x9AD4, 0x9AEE,
    0x9B25, 0x9B27, 0x9B31, 0x9B5A, 0x9B6F, 0x9BAE, 0x9CE5, 0x9CF3, 0x9CF4,
    0x9D28, 0x9D5D, 0x9E7D, 0x9EA5, 0x9EBC, 0x9EC3, 0x9EDE, 0x9EE8, 0x9F4A,
    0x9F52, 0x9F8D,
};

}  // namespace

bool IsBundledTraditional(char32_t ch) {
  return std::binary_search(kTraditional.begin(), kTraditional.end(), ch);
}

}  // namespace g2pm
