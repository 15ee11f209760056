#pragma once

#include <cstddef>

namespace cdna::keyspace {

/// Brute-force size of the key parameterisation, in bits.
///
/// Every key-driven seed is a binary64 value whose usable precision is taken
/// as 10^15 distinct settings (log2(10^15) ~= 49.83 bits). The digest feeds
/// four independent words (mu, x0/X0, C0, A0) and, through the re-hash,
/// three further seeds (Y0, Z0, B0): seven key-driven seeds give
/// 7 * 49.83 ~= 348.8 bits of parameter precision. The secret itself is a
/// 256-bit digest, so the effective keyspace is min(348.8, 256) = 256 bits,
/// comfortably above the 100-bit brute-force floor.
struct Estimate {
    std::size_t key_driven_seeds = 0;
    double decimal_precision = 0;  // log10 of distinct settings per seed
    double parameter_bits = 0;
    double digest_bits = 0;
    double effective_bits = 0;
};

inline constexpr double kBruteForceFloorBits = 100.0;

Estimate estimate();

/// The same arithmetic applied to an arbitrary seed count, e.g. 19 seeds at
/// 10^15 each is 10^285.
double parameter_bits(std::size_t seeds, double decimal_precision);

}  // namespace cdna::keyspace
