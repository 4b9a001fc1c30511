#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tilecaster::testing {

struct DecodedPng {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
};

// Minimal reader for the files write_png produces: 8-bit RGB, one IDAT,
// filter type 0 on every row. Verifies chunk CRCs. Throws on anything else.
DecodedPng read_png(const std::string& path);

}  // namespace tilecaster::testing
