#pragma once

#include <concepts>
#include <stdexcept>

namespace cyode {

/// Contract every coefficient ring has to satisfy.
///
/// Rings with runtime parameters (prime fields, Z/p^s) cannot provide
/// static zero()/one(), so identities are obtained from an existing
/// element of the same ring ("exemplar style").  inverse() throws
/// std::domain_error when the element is not a unit.
template <class R>
concept CoefficientRing = requires(const R a, const R b, long n) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_unit() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::convertible_to<R>;
    { a.zero() } -> std::convertible_to<R>;
    { a.one() } -> std::convertible_to<R>;
    { a.from_int(n) } -> std::convertible_to<R>;
};

template <CoefficientRing R>
R ring_div(const R& a, const R& b) {
    return a * b.inverse();
}

template <CoefficientRing R>
R ring_pow(R base, unsigned long e) {
    R acc = base.one();
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

} // namespace cyode
