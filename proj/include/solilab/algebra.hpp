#pragma once

// Type traits and forward declarations shared by the matrix, series and
// site-family layers. Every algebra type A provides the free functions
// zero_like, one_like, is_zero, inverse, conj, magnitude, scale and
// valid_order, found by ordinary lookup or ADL.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <type_traits>

#include "scalar.hpp"

namespace solilab {

template <class A> class Matrix;
template <class A> class Series;
template <class A> class SiteFamily;

template <class T> struct is_matrix : std::false_type {};
template <class A> struct is_matrix<Matrix<A>> : std::true_type {};
template <class T> inline constexpr bool is_matrix_v = is_matrix<T>::value;

template <class T> struct is_series : std::false_type {};
template <class A> struct is_series<Series<A>> : std::true_type {};
template <class T> inline constexpr bool is_series_v = is_series<T>::value;

template <class T> struct is_site_family : std::false_type {};
template <class A> struct is_site_family<SiteFamily<A>> : std::true_type {};
template <class T> inline constexpr bool is_site_family_v = is_site_family<T>::value;

/// Underlying commutative field of a (possibly nested) algebra.
template <class A> struct scalar_of { using type = A; };
template <class A> struct scalar_of<Matrix<A>> { using type = typename scalar_of<A>::type; };
template <class A> struct scalar_of<Series<A>> { using type = typename scalar_of<A>::type; };
template <class A> struct scalar_of<SiteFamily<A>> { using type = typename scalar_of<A>::type; };
template <class A> using scalar_t = typename scalar_of<A>::type;

template <class A>
inline constexpr bool is_exact_v = field_traits<scalar_t<A>>::exact;

template <class A> Matrix<A> zero_like(const Matrix<A>&);
template <class A> Matrix<A> one_like(const Matrix<A>&);
template <class A> bool is_zero(const Matrix<A>&);
template <class A> Matrix<A> inverse(const Matrix<A>&);
template <class A> Matrix<A> conj(const Matrix<A>&);
template <class A> double magnitude(const Matrix<A>&);
template <class A> Matrix<A> scale(const Matrix<A>&, const scalar_t<A>&);
template <class A> int valid_order(const Matrix<A>&);

template <class A> Series<A> zero_like(const Series<A>&);
template <class A> Series<A> one_like(const Series<A>&);
template <class A> bool is_zero(const Series<A>&);
template <class A> Series<A> inverse(const Series<A>&);
template <class A> Series<A> conj(const Series<A>&);
template <class A> double magnitude(const Series<A>&);
template <class A> Series<A> scale(const Series<A>&, const scalar_t<A>&);
template <class A> int valid_order(const Series<A>&);

template <class A> SiteFamily<A> zero_like(const SiteFamily<A>&);
template <class A> SiteFamily<A> one_like(const SiteFamily<A>&);
template <class A> bool is_zero(const SiteFamily<A>&);
template <class A> SiteFamily<A> inverse(const SiteFamily<A>&);
template <class A> double magnitude(const SiteFamily<A>&);
template <class A> int valid_order(const SiteFamily<A>&);

template <class A> Series<Matrix<A>> to_series_form(const Matrix<Series<A>>&);
template <class A> Matrix<Series<A>> to_matrix_form(const Series<Matrix<A>>&);

/// Equality up to rounding: exact comparison for exact fields, relative
/// tolerance against `reference` for complex doubles.
template <class A>
bool negligible(const A& x, double reference = 1.0) {
    if constexpr (is_exact_v<A>) {
        return is_zero(x);
    } else {
        return magnitude(x) <= field_traits<Complex>::relative_tolerance * std::max(1.0, reference);
    }
}

template <class A>
bool approx_equal(const A& a, const A& b) {
    if constexpr (is_exact_v<A>) {
        return is_zero(a - b);
    } else {
        return negligible(a - b, std::max(magnitude(a), magnitude(b)));
    }
}

/// True when `x` has a two-sided inverse.
template <class A>
bool invertible(const A& x) {
    try {
        (void)inverse(x);
        return true;
    } catch (const Error&) {
        return false;
    }
}

} // namespace solilab
