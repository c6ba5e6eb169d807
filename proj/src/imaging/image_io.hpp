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
#include <filesystem>
#include <string>
#include <vector>

#include "imaging/image.hpp"

namespace folio::imaging {

// Loads PNG (gray, gray+alpha, RGB, RGBA, palette, any bit depth) or
// PGM/PBM (P1, P2, P4, P5). Colour is reduced with Rec.601 luma.
GrayImage read_gray(const std::filesystem::path& path);

// Binary pages are stored as black ink on white; anything darker than mid
// gray reads back as foreground.
BinaryImage read_binary(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const GrayImage& img);
void write_png(const std::filesystem::path& path, const BinaryImage& img);
std::vector<std::uint8_t> encode_png(const GrayImage& img);

void write_pgm(const std::filesystem::path& path, const GrayImage& img);
void write_pbm(const std::filesystem::path& path, const BinaryImage& img);

std::uint8_t rec601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace folio::imaging
