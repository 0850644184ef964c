#include "opz/zeros.hpp"

#include <sstream>

namespace opz {

std::string to_string(ZeroMethod method)
{
    switch (method) {
    case ZeroMethod::JacobiBisection: return "jacobi-bisection";
    case ZeroMethod::SturmExact: return "sturm-exact";
    }
    return "unknown";
}

namespace {

using Poly = std::vector<Rational>; // lowest degree first

Rational eval(const Poly& p, const Rational& x)
{
    Rational value(0);
    for (std::size_t i = p.size(); i-- > 0;)
        value = value * x + p[i];
    return value;
}

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Poly derivative(const Poly& p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    return d;
}

Poly remainder(Poly a, const Poly& b)
{
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] -= factor * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

class SturmSequence
{
public:
    explicit SturmSequence(const Poly& p)
    {
        chain_.push_back(p);
        chain_.push_back(derivative(p));
        while (chain_.back().size() > 1) {
            Poly r = remainder(chain_[chain_.size() - 2], chain_.back());
            if (r.empty())
                break;
            for (Rational& c : r)
                c = -c;
            chain_.push_back(std::move(r));
        }
    }

    int variations(const Rational& x) const
    {
        int changes = 0;
        int last = 0;
        for (const Poly& q : chain_) {
            const int s = sgn(eval(q, x));
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++changes;
            last = s;
        }
        return changes;
    }

    const Poly& polynomial() const { return chain_.front(); }

private:
    std::vector<Poly> chain_;
};

struct Isolator
{
    const SturmSequence& sturm;
    std::vector<RationalBracket>& out;

    // Roots in (lo, hi]; neither endpoint is a root.
    void isolate(const Rational& lo, const Rational& hi, int v_lo, int v_hi)
    {
        const int count = v_lo - v_hi;
        if (count <= 0)
            return;
        if (count == 1) {
            out.push_back({lo, hi});
            return;
        }
        const Rational mid = (lo + hi) / 2;
        if (eval(sturm.polynomial(), mid) != 0) {
            const int v_mid = sturm.variations(mid);
            isolate(lo, mid, v_lo, v_mid);
            isolate(mid, hi, v_mid, v_hi);
            return;
        }
        // mid is an exact root: step off it until it is the only root in between
        Rational delta = (hi - lo) / 4;
        Rational left, right;
        int v_left = 0, v_right = 0;
        for (;;) {
            left = mid - delta;
            right = mid + delta;
            if (eval(sturm.polynomial(), left) != 0 && eval(sturm.polynomial(), right) != 0) {
                v_left = sturm.variations(left);
                v_right = sturm.variations(right);
                if (v_left - v_right == 1)
                    break;
            }
            delta /= 2;
        }
        isolate(lo, left, v_lo, v_left);
        out.push_back({mid, mid});
        isolate(right, hi, v_right, v_hi);
    }
};

Rational ceil_rational(const Rational& q)
{
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(c);
}

Rational floor_rational(const Rational& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

} // namespace

ZeroSet zeros_exact(const MonicPolynomial<Rational>& p, const Hull& hull, const EngineLimits& limits)
{
    const int n = p.degree();
    detail::check_degree(n, true, limits, "zeros_exact");
    ZeroSet result;
    result.degree = n;
    result.method = ZeroMethod::SturmExact;
    if (n == 0)
        return result;
    if (n == 1) {
        const Rational root = -p.coefficients[0];
        result.brackets.push_back({root, root});
        result.zeros.push_back(to_double(root));
        return result;
    }

    // Cauchy bound, rounded out to integers so bisection points stay dyadic.
    Rational bound(0);
    for (const Rational& c : p.coefficients)
        if (abs(c) > bound)
            bound = abs(c);
    bound = ceil_rational(bound) + 1;
    Rational lower = -bound, upper = bound;
    if (hull.lower && floor_rational(*hull.lower) - 1 > lower)
        lower = floor_rational(*hull.lower) - 1;
    if (hull.upper && ceil_rational(*hull.upper) + 1 < upper)
        upper = ceil_rational(*hull.upper) + 1;

    const Poly full = p.full();
    while (eval(full, lower) == 0)
        lower -= 1;
    while (eval(full, upper) == 0)
        upper += 1;

    const SturmSequence sturm(full);
    std::vector<RationalBracket> brackets;
    Isolator{sturm, brackets}.isolate(lower, upper, sturm.variations(lower), sturm.variations(upper));
    if (static_cast<int>(brackets.size()) != n) {
        std::ostringstream msg;
        msg << "zeros_exact: isolated " << brackets.size() << " real zeros of a degree-" << n
            << " polynomial (expected all zeros real and simple)";
        throw std::runtime_error(msg.str());
    }

    Rational target = upper - lower;
    mpz_class scale = mpz_class(1) << 60;
    target /= Rational(scale);
    double widest = 0.0;
    for (RationalBracket& b : brackets) {
        if (!b.is_point()) {
            const int sign_lo = sgn(eval(full, b.lower));
            while (b.upper - b.lower > target) {
                const Rational mid = (b.lower + b.upper) / 2;
                const int s = sgn(eval(full, mid));
                if (s == 0) {
                    b.lower = b.upper = mid;
                    break;
                }
                if (s == sign_lo)
                    b.lower = mid;
                else
                    b.upper = mid;
            }
        }
        result.zeros.push_back(to_double((b.lower + b.upper) / 2));
        widest = std::max(widest, to_double(b.upper - b.lower));
    }
    result.brackets = std::move(brackets);
    result.certified_accuracy = widest / 2;
    return result;
}

ZeroSet float_path_zeros(std::span<const Rational> exact_moments, int n, const Hull& hull, int precision_bits,
                         const ZeroOptions& options)
{
    return with_precision(precision_bits, [&](auto tag) {
        using S = decltype(tag);
        return float_path_zeros<S>(exact_moments, n, hull, options);
    });
}

namespace {

void cross_check(const ZeroSet& exact, const ZeroSet& floating, double tolerance)
{
    for (int k = 0; k < exact.degree; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double x = exact.zeros[uk];
        const double allowed =
            tolerance * (1.0 + std::abs(x)) + exact.certified_accuracy + floating.certified_accuracy;
        if (!(std::abs(x - floating.zeros[uk]) <= allowed)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "exact and floating zero paths disagree at zero " << (k + 1) << " of degree " << exact.degree
                << ": " << x << " vs " << floating.zeros[uk];
            throw PathDisagreementError(msg.str());
        }
    }
}

} // namespace

ZeroSet zeros(const PerturbedMeasure& m, int n, const ZeroOptions& options)
{
    if (n < 0)
        throw std::invalid_argument("zeros: negative degree");
    const std::vector<Rational> exact_moments = moments(m, n == 0 ? 1 : 2 * n);
    const Hull hull = m.hull();

    if (!m.arithmetic().is_exact())
        return float_path_zeros(exact_moments, n, hull, m.arithmetic().precision_bits, options);

    const MonicPolynomial<Rational> p =
        hankel_polynomial<Rational>(std::span<const Rational>(exact_moments), n, options.limits);
    ZeroSet result = zeros_exact(p, hull, options.limits);
    if (n >= 1 && n <= options.cross_check_max_degree && n <= options.limits.float_degree_cap) {
        const ZeroSet floating = float_path_zeros(exact_moments, n, hull, options.float_bits, options);
        cross_check(result, floating, options.cross_check_tolerance);
        result.cross_checked = true;
    }
    return result;
}

ZeroSet zeros(const MollifiedMeasure& m, int n, const ZeroOptions& options)
{
    if (n < 0)
        throw std::invalid_argument("zeros: negative degree");
    const std::vector<Rational> exact_moments = moments(m, n == 0 ? 1 : 2 * n);
    const Arithmetic& arithmetic = m.fixed_part().arithmetic();
    const int bits = arithmetic.is_exact() ? options.float_bits : arithmetic.precision_bits;
    return float_path_zeros(exact_moments, n, m.hull(), bits, options);
}

} // namespace opz
