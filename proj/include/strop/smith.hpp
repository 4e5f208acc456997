#pragma once

// Smith normal form over Z with unimodular transforms.
//
// The elimination runs on checked 64-bit integers first and restarts on GMP
// integers if any intermediate value overflows, so results are always exact.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "strop/arith.hpp"
#include "strop/matrix.hpp"

namespace strop {

struct SmithForm {
    IntMatrix U;     // rows x rows, unimodular
    IntMatrix Uinv;
    IntMatrix D;     // rows x cols, diagonal
    IntMatrix V;     // cols x cols, unimodular
    IntMatrix Vinv;
    std::size_t rank = 0;
    IntVector diagonal;  // the `rank` positive diagonal entries, d1 | d2 | ...
};

namespace detail {

template <class T>
class SnfWork {
public:
    SnfWork(Matrix<T> a, bool track) : A(std::move(a)), track_(track) {
        if (track_) {
            U = Matrix<T>::identity(A.rows());
            Uinv = U;
            V = Matrix<T>::identity(A.cols());
            Vinv = V;
        }
    }

    Matrix<T> A, U, Uinv, V, Vinv;

    // row_i += c * row_j
    void row_addmul(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < A.cols(); ++k)
            if (!is_zero(A(j, k))) A(i, k) += c * A(j, k);
        if (!track_) return;
        for (std::size_t k = 0; k < U.cols(); ++k)
            if (!is_zero(U(j, k))) U(i, k) += c * U(j, k);
        for (std::size_t k = 0; k < Uinv.rows(); ++k)
            if (!is_zero(Uinv(k, i))) Uinv(k, j) -= c * Uinv(k, i);
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A(i, k), A(j, k));
        if (!track_) return;
        for (std::size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
        for (std::size_t k = 0; k < Uinv.rows(); ++k) std::swap(Uinv(k, i), Uinv(k, j));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < A.cols(); ++k) A(i, k) = -A(i, k);
        if (!track_) return;
        for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
        for (std::size_t k = 0; k < Uinv.rows(); ++k) Uinv(k, i) = -Uinv(k, i);
    }
    // col_i += c * col_j
    void col_addmul(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < A.rows(); ++k)
            if (!is_zero(A(k, j))) A(k, i) += c * A(k, j);
        if (!track_) return;
        for (std::size_t k = 0; k < V.rows(); ++k)
            if (!is_zero(V(k, j))) V(k, i) += c * V(k, j);
        for (std::size_t k = 0; k < Vinv.cols(); ++k)
            if (!is_zero(Vinv(i, k))) Vinv(j, k) -= c * Vinv(i, k);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < A.rows(); ++k) std::swap(A(k, i), A(k, j));
        if (!track_) return;
        for (std::size_t k = 0; k < V.rows(); ++k) std::swap(V(k, i), V(k, j));
        for (std::size_t k = 0; k < Vinv.cols(); ++k) std::swap(Vinv(i, k), Vinv(j, k));
    }

    std::size_t run() {
        const std::size_t m = A.rows(), n = A.cols();
        std::size_t t = 0;
        while (t < m && t < n) {
            if (!move_min_pivot(t)) break;
            for (;;) {
                if (clear_column(t)) continue;
                if (clear_row(t)) continue;
                if (fix_divisibility(t)) continue;
                break;
            }
            if (A(t, t) < T(0)) row_negate(t);
            ++t;
        }
        return t;
    }

private:
    bool track_;

    static T absval(const T& x) { return x < T(0) ? T(-x) : x; }

    bool move_min_pivot(std::size_t t) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        T best(0);
        for (std::size_t i = t; i < A.rows(); ++i)
            for (std::size_t j = t; j < A.cols(); ++j) {
                if (is_zero(A(i, j))) continue;
                T a = absval(A(i, j));
                if (!found || a < best) {
                    best = a;
                    bi = i;
                    bj = j;
                    found = true;
                    if (best == T(1)) goto done;
                }
            }
    done:
        if (!found) return false;
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
    }

    // Returns true if the pivot changed and the pass must restart.
    bool clear_column(std::size_t t) {
        for (std::size_t i = t + 1; i < A.rows(); ++i) {
            if (is_zero(A(i, t))) continue;
            T q = A(i, t) / A(t, t);
            if (!is_zero(q)) row_addmul(i, t, -q);
            if (!is_zero(A(i, t))) {
                row_swap(t, i);
                return true;
            }
        }
        return false;
    }

    bool clear_row(std::size_t t) {
        for (std::size_t j = t + 1; j < A.cols(); ++j) {
            if (is_zero(A(t, j))) continue;
            T q = A(t, j) / A(t, t);
            if (!is_zero(q)) col_addmul(j, t, -q);
            if (!is_zero(A(t, j))) {
                col_swap(t, j);
                return true;
            }
        }
        return false;
    }

    bool fix_divisibility(std::size_t t) {
        if (absval(A(t, t)) == T(1)) return false;
        for (std::size_t i = t + 1; i < A.rows(); ++i)
            for (std::size_t j = t + 1; j < A.cols(); ++j)
                if (!is_zero(T(A(i, j) % A(t, t)))) {
                    row_addmul(t, i, T(1));
                    return true;
                }
        return false;
    }
};

inline Integer to_integer(const Checked64& x) { return Integer(x.value()); }
inline Integer to_integer(const Integer& x) { return x; }

template <class T>
IntMatrix to_int_matrix(const Matrix<T>& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_integer(m(i, j));
    return out;
}

inline std::optional<Matrix<Checked64>> to_checked(const IntMatrix& a) {
    Matrix<Checked64> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!fits_int64(a(i, j))) return std::nullopt;
            out(i, j) = Checked64(a(i, j).convert_to<std::int64_t>());
        }
    return out;
}

template <class T>
SmithForm finish(SnfWork<T>& w, std::size_t rank, bool track) {
    SmithForm f;
    f.rank = rank;
    f.D = to_int_matrix(w.A);
    for (std::size_t i = 0; i < rank; ++i) f.diagonal.push_back(f.D(i, i));
    if (track) {
        f.U = to_int_matrix(w.U);
        f.Uinv = to_int_matrix(w.Uinv);
        f.V = to_int_matrix(w.V);
        f.Vinv = to_int_matrix(w.Vinv);
    }
    return f;
}

inline SmithForm smith_impl(const IntMatrix& a, bool track) {
    if (auto small = to_checked(a)) {
        try {
            SnfWork<Checked64> w(std::move(*small), track);
            std::size_t r = w.run();
            return finish(w, r, track);
        } catch (const ArithmeticOverflow&) {
            // fall through to arbitrary precision
        }
    }
    SnfWork<Integer> w(a, track);
    std::size_t r = w.run();
    return finish(w, r, track);
}

} // namespace detail

/// U * A * V == D with D diagonal, non-negative and divisibility-sorted.
inline SmithForm smith_normal_form(const IntMatrix& a) { return detail::smith_impl(a, true); }

/// Only the non-zero invariant factors d1 | d2 | ... (no transforms).
inline IntVector invariant_factors(const IntMatrix& a) { return detail::smith_impl(a, false).diagonal; }

/// Integer solution of A x = b, or nullopt if none exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
    SmithForm f = smith_normal_form(a);
    IntVector y = f.U * b;
    IntVector z(a.cols(), Integer(0));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < f.rank) {
            if (y[i] % f.diagonal[i] != 0) return std::nullopt;
            z[i] = y[i] / f.diagonal[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return f.V * z;
}

} // namespace strop
