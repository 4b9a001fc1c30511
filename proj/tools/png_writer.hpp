#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace tilecaster {

// Writes 8-bit RGB rows (width*height*3 bytes). Output depends only on the
// pixels, so identical frames give identical files. Throws std::runtime_error.
void write_png(const std::filesystem::path& path, int width, int height, std::span<const std::uint8_t> rgb);

// Places equally sized RGB frames side by side.
std::vector<std::uint8_t> hconcat_frames(std::span<const std::vector<std::uint8_t>> frames, int width, int height);

}  // namespace tilecaster
