#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace solilab {

/// Square matrix over an arbitrary unital associative algebra A.
///
/// Entries may themselves be matrices, so Matrix<Matrix<Rational>> is a
/// block matrix. Products keep the order of factors: (ab)_ij = sum_k a_ik b_kj
/// with a's entry on the left.
template <class A>
class Matrix {
public:
    using value_type = A;

    Matrix() = default;
    Matrix(std::size_t dim, const A& fill) : dim_(dim), data_(dim * dim, fill) {
        if (dim == 0) throw ShapeMismatch("matrix dimension must be positive");
    }

    /// Identity of size `dim`, entries shaped like `proto`.
    static Matrix identity(std::size_t dim, const A& proto) {
        Matrix m(dim, zero_like(proto));
        for (std::size_t k = 0; k < dim; ++k) m(k, k) = one_like(proto);
        return m;
    }

    static Matrix diagonal(std::span<const A> diag) {
        if (diag.empty()) throw ShapeMismatch("empty diagonal");
        Matrix m(diag.size(), zero_like(diag.front()));
        for (std::size_t k = 0; k < diag.size(); ++k) m(k, k) = diag[k];
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    A& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const A& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    /// An entry whose shape every other entry shares.
    const A& proto() const { return data_.front(); }

    std::span<const A> entries() const noexcept { return data_; }
    std::span<A> entries() noexcept { return data_; }

    std::vector<A> row(std::size_t i) const { return {data_.begin() + i * dim_, data_.begin() + (i + 1) * dim_}; }
    std::vector<A> col(std::size_t j) const {
        std::vector<A> c;
        c.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    /// The matrix with row i and column j removed.
    Matrix submatrix(std::size_t i, std::size_t j) const {
        if (dim_ < 2) throw ShapeMismatch("submatrix of a 1x1 matrix");
        Matrix s(dim_ - 1, proto());
        for (std::size_t p = 0, sp = 0; p < dim_; ++p) {
            if (p == i) continue;
            for (std::size_t q = 0, sq = 0; q < dim_; ++q) {
                if (q == j) continue;
                s(sp, sq++) = (*this)(p, q);
            }
            ++sp;
        }
        return s;
    }

    template <class Fn>
    auto map(Fn&& fn) const -> Matrix<std::decay_t<decltype(fn(std::declval<const A&>()))>> {
        using B = std::decay_t<decltype(fn(std::declval<const A&>()))>;
        Matrix<B> out(dim_, fn(proto()));
        for (std::size_t k = 0; k < data_.size(); ++k) out.entries()[k] = fn(data_[k]);
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    void require_same_dim(const Matrix& o) const {
        if (dim_ != o.dim_)
            throw ShapeMismatch("matrix dimensions " + std::to_string(dim_) + " and " + std::to_string(o.dim_));
    }

private:
    std::size_t dim_ = 0;
    std::vector<A> data_;
};

template <class A>
Matrix<A> operator+(Matrix<A> a, const Matrix<A>& b) { return a += b; }
template <class A>
Matrix<A> operator-(Matrix<A> a, const Matrix<A>& b) { return a -= b; }
template <class A>
Matrix<A> operator-(const Matrix<A>& a) {
    return a.map([](const A& x) { return -x; });
}

template <class A>
Matrix<A> operator*(const Matrix<A>& a, const Matrix<A>& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim();
    Matrix<A> c(n, zero_like(a.proto()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const A& aik = a(i, k);
            if (is_zero(aik)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

/// Left multiplication of every entry: (x m)_ij = x m_ij.
template <class A>
Matrix<A> operator*(const A& x, const Matrix<A>& m) {
    return m.map([&](const A& e) { return x * e; });
}

/// Right multiplication of every entry: (m x)_ij = m_ij x.
template <class A>
Matrix<A> operator*(const Matrix<A>& m, const A& x) {
    return m.map([&](const A& e) { return e * x; });
}

template <class A>
bool operator==(const Matrix<A>& a, const Matrix<A>& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (!(a.entries()[k] == b.entries()[k])) return false;
    return true;
}

template <class A>
Matrix<A> zero_like(const Matrix<A>& m) { return Matrix<A>(m.dim(), zero_like(m.proto())); }

template <class A>
Matrix<A> one_like(const Matrix<A>& m) { return Matrix<A>::identity(m.dim(), m.proto()); }

template <class A>
bool is_zero(const Matrix<A>& m) {
    for (const A& e : m.entries())
        if (!is_zero(e)) return false;
    return true;
}

/// Entrywise conjugation of the scalars (no transpose).
template <class A>
Matrix<A> conj(const Matrix<A>& m) {
    return m.map([](const A& e) { return conj(e); });
}

template <class A>
double magnitude(const Matrix<A>& m) {
    double best = 0.0;
    for (const A& e : m.entries()) best = std::max(best, magnitude(e));
    return best;
}

template <class A>
Matrix<A> scale(const Matrix<A>& m, const scalar_t<A>& s) {
    return m.map([&](const A& e) { return scale(e, s); });
}

template <class A>
int valid_order(const Matrix<A>& m) {
    int v = std::numeric_limits<int>::max();
    for (const A& e : m.entries()) v = std::min(v, valid_order(e));
    return v;
}

template <class A>
Matrix<A> transpose(const Matrix<A>& m) {
    Matrix<A> t(m.dim(), m.proto());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) t(j, i) = m(i, j);
    return t;
}

/// Size of the scalar matrix obtained by erasing all block structure.
template <class A>
std::size_t flat_dim(const A& x) {
    if constexpr (Field<A>) {
        return 1;
    } else {
        static_assert(is_matrix_v<A>, "only nested matrices flatten to scalars");
        return x.dim() * flat_dim(x.proto());
    }
}

/// Erase the block structure of a matrix over matrices over ... over a field.
template <class A>
Matrix<scalar_t<A>> flatten(const Matrix<A>& m) {
    if constexpr (Field<A>) {
        return m;
    } else {
        static_assert(is_matrix_v<A>, "only nested matrices flatten to scalars");
        using F = scalar_t<A>;
        const std::size_t inner = flat_dim(m.proto());
        Matrix<F> out(m.dim() * inner, zero_like(F{}));
        for (std::size_t i = 0; i < m.dim(); ++i) {
            for (std::size_t j = 0; j < m.dim(); ++j) {
                Matrix<F> blk = flatten(m(i, j));
                if (blk.dim() != inner) throw ShapeMismatch("ragged block structure");
                for (std::size_t p = 0; p < inner; ++p)
                    for (std::size_t q = 0; q < inner; ++q) out(i * inner + p, j * inner + q) = blk(p, q);
            }
        }
        return out;
    }
}

/// Inverse of flatten: rebuild the block structure of `proto`-shaped entries.
template <class A>
Matrix<A> renest(const Matrix<scalar_t<A>>& flat, const A& proto) {
    if constexpr (Field<A>) {
        return flat;
    } else {
        using F = scalar_t<A>;
        const std::size_t inner = flat_dim(proto);
        if (inner == 0 || flat.dim() % inner != 0) throw ShapeMismatch("flat size not a multiple of block size");
        const std::size_t outer = flat.dim() / inner;
        Matrix<A> out(outer, proto);
        for (std::size_t i = 0; i < outer; ++i) {
            for (std::size_t j = 0; j < outer; ++j) {
                Matrix<F> blk(inner, zero_like(F{}));
                for (std::size_t p = 0; p < inner; ++p)
                    for (std::size_t q = 0; q < inner; ++q) blk(p, q) = flat(i * inner + p, j * inner + q);
                Matrix<typename A::value_type> nested = renest(blk, proto.proto());
                out(i, j) = std::move(nested);
            }
        }
        return out;
    }
}

/// Gauss-Jordan elimination over a commutative field.
template <Field F>
Matrix<F> field_inverse(const Matrix<F>& m) {
    const std::size_t n = m.dim();
    Matrix<F> a = m;
    Matrix<F> inv = Matrix<F>::identity(n, m.proto());
    double norm = magnitude(m);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        if constexpr (field_traits<F>::exact) {
            for (std::size_t r = col; r < n; ++r) {
                if (!is_zero(a(r, col))) { pivot = r; break; }
            }
        } else {
            double best = field_traits<F>::relative_tolerance * 1e-4 * std::max(norm, 1e-300);
            for (std::size_t r = col; r < n; ++r) {
                double mag = magnitude(a(r, col));
                if (mag > best) { best = mag; pivot = r; }
            }
        }
        if (pivot == n) throw SingularMatrix("no invertible pivot in column " + std::to_string(col));
        if (pivot != col) {
            for (std::size_t q = 0; q < n; ++q) {
                std::swap(a(pivot, q), a(col, q));
                std::swap(inv(pivot, q), inv(col, q));
            }
        }
        F p_inv = inverse(a(col, col));
        for (std::size_t q = 0; q < n; ++q) {
            a(col, q) *= p_inv;
            inv(col, q) *= p_inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(a(r, col))) continue;
            F factor = a(r, col);
            for (std::size_t q = 0; q < n; ++q) {
                a(r, q) -= factor * a(col, q);
                inv(r, q) -= factor * inv(col, q);
            }
        }
    }
    return inv;
}

/// Two-sided inverse over any algebra in scope.
///
/// Matrices over matrices are flattened to one scalar matrix and inverted
/// over the field; matrices over series are inverted as series with matrix
/// coefficients.
template <class A>
Matrix<A> inverse(const Matrix<A>& m) {
    if constexpr (Field<A>) {
        return field_inverse(m);
    } else if constexpr (is_matrix_v<A>) {
        return renest(field_inverse(flatten(m)), m.proto());
    } else if constexpr (is_series_v<A>) {
        return to_matrix_form(inverse(to_series_form(m)));
    } else {
        static_assert(is_matrix_v<A>, "unsupported entry algebra for inversion");
    }
}

/// Commutator xy - yx.
template <class A>
A commutator(const A& x, const A& y) { return x * y - y * x; }

} // namespace solilab
