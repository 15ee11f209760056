#include "cdna/keyspace.hpp"

#include <algorithm>
#include <cmath>

namespace cdna::keyspace {

double parameter_bits(std::size_t seeds, double decimal_precision)
{
    return static_cast<double>(seeds) * decimal_precision * std::log2(10.0);
}

Estimate estimate()
{
    Estimate e;
    e.key_driven_seeds = 7;  // mu, x0/X0, C0, A0, Y0, Z0, B0
    e.decimal_precision = 15;
    e.parameter_bits = parameter_bits(e.key_driven_seeds, e.decimal_precision);
    e.digest_bits = 256;
    e.effective_bits = std::min(e.parameter_bits, e.digest_bits);
    return e;
}

}  // namespace cdna::keyspace
