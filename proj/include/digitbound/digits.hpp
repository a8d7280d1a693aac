#ifndef DIGITBOUND_DIGITS_HPP
#define DIGITBOUND_DIGITS_HPP

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace digitbound {

// Expansion base m >= 2.
struct Radix {
    mpz_class m;

    explicit Radix(mpz_class base);
    explicit Radix(unsigned long base) : Radix(mpz_class(base)) {}

    bool operator==(const Radix& other) const { return m == other.m; }
};

// Big-endian digit sequence: digits.front() is the most significant digit.
// Invariants: every digit is in [0, m); no leading zero except that the
// value 0 is represented as exactly {0}.
struct DigitVector {
    std::vector<mpz_class> digits;
    Radix base;

    std::size_t length() const { return digits.size(); }
};

// Base-m expansion of n >= 0.
DigitVector expand(const mpz_class& n, const Radix& base);

// Inverse of expand. Rejects digit vectors with entries outside [0, m).
mpz_class value(const DigitVector& dv);

// Sum of the base-m digits of n.
mpz_class digit_sum(const mpz_class& n, const Radix& base);

// Number of nonzero base-m digits of n.
std::size_t nonzero_count(const mpz_class& n, const Radix& base);

// (m^k - 1) / (m - 1) = 1 + m + ... + m^(k-1), for k >= 1.
mpz_class repunit(const Radix& base, unsigned long k);

} // namespace digitbound

#endif // DIGITBOUND_DIGITS_HPP
