#pragma once

// Checksums freezing the repository's transcribed data files (FNV-1a 64).

#include <cstdint>

namespace k3pencil::data_checksums {

inline constexpr std::uint64_t example1_sextic = 0xb990ccc1dc847aebull;
inline constexpr std::uint64_t example2_sextic = 0x61556a51caa32961ull;
inline constexpr std::uint64_t example3_sextic = 0x45fdb71dce4c29afull;
inline constexpr std::uint64_t example3_quartic = 0xdf850ab233131733ull;
inline constexpr std::uint64_t phi20_json = 0x25e522a64eb6efcfull;

}  // namespace k3pencil::data_checksums
