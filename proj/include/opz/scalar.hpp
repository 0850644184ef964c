#pragma once

#include "opz/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace opz {

using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Working precisions available to the floating path, in significand bits.
inline constexpr int kDoubleBits = std::numeric_limits<double>::digits;
inline constexpr int kExtendedBits = std::numeric_limits<long double>::digits;
inline constexpr int kQuadBits = std::numeric_limits<Quad>::digits;

inline bool is_supported_precision(int bits)
{
    return bits == kDoubleBits || bits == kExtendedBits || bits == kQuadBits;
}

/// Calls f(S{}) with S the floating type of the requested precision.
template <class F>
decltype(auto) with_precision(int bits, F&& f)
{
    if (bits == kDoubleBits)
        return f(double{});
    if (bits == kExtendedBits)
        return f(static_cast<long double>(0));
    if (bits == kQuadBits)
        return f(Quad{});
    throw std::invalid_argument("unsupported float precision: " + std::to_string(bits) + " bits (use " +
                                std::to_string(kDoubleBits) + ", " + std::to_string(kExtendedBits) + " or " +
                                std::to_string(kQuadBits) + ")");
}

/// Correctly rounded (nearest, ties to even) conversion of an exact rational.
template <class S>
S to_scalar(const Rational& q)
{
    if (q == 0)
        return S(0);
    constexpr int p = std::numeric_limits<S>::digits;
    static_assert(p <= 128);

    mpz_class num = abs(q.get_num());
    const mpz_class& den = q.get_den();
    const long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // num / den lies in [2^(e-1), 2^(e+1)); scale so the quotient has at least p + 1 bits.
    long shift = p + 2 - e;
    mpz_class scaled = num;
    mpz_class divisor = den;
    if (shift >= 0)
        scaled <<= static_cast<mp_bitcnt_t>(shift);
    else
        divisor <<= static_cast<mp_bitcnt_t>(-shift);

    mpz_class t, r;
    mpz_fdiv_qr(t.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), divisor.get_mpz_t());

    const long extra = static_cast<long>(mpz_sizeinbase(t.get_mpz_t(), 2)) - p;
    bool sticky = r != 0;
    bool guard = false;
    if (extra > 0) {
        guard = mpz_tstbit(t.get_mpz_t(), static_cast<mp_bitcnt_t>(extra - 1)) != 0;
        for (long b = 0; b + 1 < extra && !sticky; ++b)
            sticky = mpz_tstbit(t.get_mpz_t(), static_cast<mp_bitcnt_t>(b)) != 0;
        t >>= static_cast<mp_bitcnt_t>(extra);
        shift -= extra;
    }
    if (guard && (sticky || mpz_odd_p(t.get_mpz_t())))
        ++t;

    mpz_class hi = t >> 64;
    mpz_class lo = t - (hi << 64);
    using std::ldexp;
    S value = ldexp(S(static_cast<unsigned long>(hi.get_ui())), 64) + S(static_cast<unsigned long>(lo.get_ui()));
    value = ldexp(value, static_cast<int>(-shift));
    return q < 0 ? S(-value) : value;
}

template <class S>
double narrow(const S& x)
{
    return static_cast<double>(x);
}

} // namespace opz
