// Copyright 2026 The Folio Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imaging/image.hpp"

// Slow, obviously-correct reference implementations. Nothing here shares code
// with the library beyond the image containers.
namespace folio::oracle {

// Window statistics summed pixel by pixel; the threshold arithmetic follows
// the published formula.
imaging::BinaryImage naive_sauvola(const imaging::GrayImage& img, int window,
                                   double k, double r);

// Recursive flood fill. Labels are 1-based in raster order of each
// component's first pixel; 0 is background.
std::vector<int> flood_fill_labels(const imaging::BinaryImage& img,
                                   int connectivity);

// Rewrites any labelling into first-appearance raster order so two
// partitions compare with ==.
std::vector<int> canonical_labels(const std::vector<int>& labels);

// OR of the image shifted by every offset of a size x size square.
imaging::BinaryImage shift_union_dilate(const imaging::BinaryImage& img,
                                        int size);

// complement(dilate(complement(X))) computed on a copy padded with
// background, so windows that leave the raster never survive.
imaging::BinaryImage duality_erode(const imaging::BinaryImage& img, int size);

// Full-matrix Wagner-Fischer.
std::size_t edit_distance(const std::u32string& a, const std::u32string& b);

// Full-matrix LCS length.
std::size_t lcs(const std::vector<std::u32string>& a,
                const std::vector<std::u32string>& b);

// Maximal runs of a-z, A-Z, ä, ö, ü, ß with A-Z lower-cased. Enough for
// texts drawn from fixtures::kTextAlphabet.
std::vector<std::u32string> letter_words(const std::u32string& s);

}  // namespace folio::oracle
