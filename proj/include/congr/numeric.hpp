#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace congr {

using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// Error codes mirror the failure modes of the public operations.
enum class errc {
    composition_nonzero,
    modulus_too_small,
    not_in_gamma2,
    m_too_small,
    unknown_symbol,
    bad_degree,
    bad_params,
    mismatch,
    io_error,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// g = p*a + q*b with g = gcd(a,b) >= 0.
struct GcdExt {
    Int g, p, q;
};

inline GcdExt gcd_ext(Int a, Int b) {
    Int p0 = 1, q0 = 0, p1 = 0, q1 = 1;
    while (b != 0) {
        Int qt = a / b;
        Int r = a - qt * b;
        a = b;
        b = r;
        Int p2 = p0 - qt * p1, q2 = q0 - qt * q1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if (a < 0) {
        a = -a;
        p0 = -p0;
        q0 = -q0;
    }
    return {a, p0, q0};
}

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e != 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Exponent of the largest power of p dividing n (n >= 1).
inline long p_adic_valuation(Int n, long p) {
    if (n <= 0) fail(errc::bad_params, "p_adic_valuation: n must be positive");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

struct PrimePower {
    long p;
    long e;
};

inline std::vector<PrimePower> factorize(long n) {
    std::vector<PrimePower> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

}  // namespace congr
