#include "digitbound/digits.hpp"

#include <algorithm>
#include <stdexcept>

namespace digitbound {

Radix::Radix(mpz_class base) : m(std::move(base)) {
    if (m < 2)
        throw std::invalid_argument("Radix: base must be >= 2, got " + m.get_str());
}

DigitVector expand(const mpz_class& n, const Radix& base) {
    if (sgn(n) < 0)
        throw std::invalid_argument("expand: value must be nonnegative, got " + n.get_str());
    if (n == 0)
        return DigitVector{{mpz_class(0)}, base};
    std::vector<mpz_class> digits;
    mpz_class rest = n, digit;
    while (rest != 0) {
        mpz_tdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.m.get_mpz_t());
        digits.push_back(digit);
    }
    std::reverse(digits.begin(), digits.end());
    return DigitVector{std::move(digits), base};
}

mpz_class value(const DigitVector& dv) {
    if (dv.digits.empty())
        throw std::invalid_argument("value: empty digit vector");
    mpz_class acc = 0;
    for (const mpz_class& d : dv.digits) {
        if (sgn(d) < 0 || d >= dv.base.m)
            throw std::invalid_argument("value: digit " + d.get_str() +
                                        " out of range for base " + dv.base.m.get_str());
        acc = acc * dv.base.m + d;
    }
    return acc;
}

mpz_class digit_sum(const mpz_class& n, const Radix& base) {
    if (sgn(n) < 0)
        throw std::invalid_argument("digit_sum: value must be nonnegative");
    mpz_class sum = 0, rest = n, digit;
    while (rest != 0) {
        mpz_tdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.m.get_mpz_t());
        sum += digit;
    }
    return sum;
}

std::size_t nonzero_count(const mpz_class& n, const Radix& base) {
    if (sgn(n) < 0)
        throw std::invalid_argument("nonzero_count: value must be nonnegative");
    std::size_t count = 0;
    mpz_class rest = n, digit;
    while (rest != 0) {
        mpz_tdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.m.get_mpz_t());
        if (digit != 0)
            ++count;
    }
    return count;
}

mpz_class repunit(const Radix& base, unsigned long k) {
    if (k < 1)
        throw std::invalid_argument("repunit: k must be >= 1");
    mpz_class numerator;
    mpz_pow_ui(numerator.get_mpz_t(), base.m.get_mpz_t(), k);
    numerator -= 1;
    mpz_class result, divisor = base.m - 1;
    mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), divisor.get_mpz_t());
    return result;
}

} // namespace digitbound
