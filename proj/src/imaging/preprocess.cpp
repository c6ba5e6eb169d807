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

#include "common/error.hpp"
#include "imaging/image.hpp"

namespace folio::imaging {

Preprocessed preprocess(const GrayImage& scan, const BinarizeConfig& cfg, SkewSearch search) {
  if (scan.empty()) throw Error(ErrorCode::kEmptyImage, "scan has no pixels");
  Preprocessed out;
  out.binary = remove_scan_border(sauvola_binarize(scan, cfg));
  if (!out.binary.any()) return out;
  out.skew_deg = estimate_skew(out.binary, search);
  if (out.skew_deg != 0.0) {
    out.binary = remove_scan_border(sauvola_binarize(rotate(scan, out.skew_deg, 255), cfg));
  }
  return out;
}

}  // namespace folio::imaging
