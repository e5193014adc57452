#pragma once

// Smith normal form over Z.
//
// Pivoting: smallest nonzero magnitude in the active block, first in row-major
// order on ties, so the output is reproducible. The elimination runs in
// checked 64-bit arithmetic first and restarts in BigInt on overflow.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rtoric/bigint.hpp"
#include "rtoric/matrix.hpp"

namespace rtoric {

struct SmithOptions {
    bool want_u = false;          ///< row transform U with U*A*V = D
    bool want_u_inverse = false;  ///< U^{-1}
    bool want_v = false;          ///< column transform V
    bool want_v_inverse = false;  ///< V^{-1}
};

struct SmithDecomposition {
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Nonzero invariant factors d_1 | d_2 | ... (all positive).
    std::vector<BigInt> factors;
    IntMatrix u;
    IntMatrix u_inverse;
    IntMatrix v;
    IntMatrix v_inverse;
    bool used_bigint = false;

    std::size_t rank() const { return factors.size(); }

    /// The diagonal matrix D of the same shape as the input.
    IntMatrix diagonal() const {
        IntMatrix d(rows, cols);
        for (std::size_t i = 0; i < factors.size(); ++i) d(i, i) = factors[i];
        return d;
    }
};

namespace detail {

template <class T>
class SmithEngine {
public:
    SmithEngine(Matrix<T> a, const SmithOptions& opt) : a_(std::move(a)), opt_(opt) {
        if (opt_.want_u) u_ = Matrix<T>::identity(a_.rows());
        if (opt_.want_u_inverse) ui_ = Matrix<T>::identity(a_.rows());
        if (opt_.want_v) v_ = Matrix<T>::identity(a_.cols());
        if (opt_.want_v_inverse) vi_ = Matrix<T>::identity(a_.cols());
    }

    std::vector<T> run() {
        const std::size_t C = a_.cols();
        active_rows_ = a_.rows();
        std::vector<T> diag;
        std::size_t t = 0;
        while (t < active_rows_ && t < C) {
            std::size_t pi = 0, pj = 0;
            if (!find_pivot(t, pi, pj)) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < active_rows_; ++i) {
                    if (a_(i, t) == 0) continue;
                    T q = quotient(a_(i, t), a_(t, t));
                    if (q != 0) row_sub(i, t, q);
                    if (a_(i, t) != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < C; ++j) {
                    if (a_(t, j) == 0) continue;
                    T q = quotient(a_(t, j), a_(t, t));
                    if (q != 0) col_sub(j, t, q, t);
                    if (a_(t, j) != 0) clean = false;
                }
                if (!clean) {
                    reposition_in_cross(t);
                    continue;
                }
                if (magnitude(a_(t, t)) != 1) {
                    std::size_t bad_row = 0;
                    if (find_indivisible(t, bad_row)) {
                        row_sub(t, bad_row, T(-1));
                        continue;
                    }
                }
                break;
            }
            if (a_(t, t) < 0) negate_row(t);
            diag.push_back(a_(t, t));
            ++t;
        }
        return diag;
    }

    Matrix<T>& u() { return u_; }
    Matrix<T>& u_inverse() { return ui_; }
    Matrix<T>& v() { return v_; }
    Matrix<T>& v_inverse() { return vi_; }

private:
    static T quotient(const T& a, const T& b) {
        if (b == -1) return checked_neg(a);
        return a / b;
    }

    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) {
        const std::size_t C = a_.cols();
        bool found = false;
        T best = 0;
        std::size_t i = t;
        while (i < active_rows_) {
            const T* row = a_.row_ptr(i);
            bool row_nonzero = false;
            for (std::size_t j = t; j < C; ++j) {
                if (row[j] == 0) continue;
                row_nonzero = true;
                T mag = magnitude(row[j]);
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                    if (best == 1) return true;
                }
            }
            if (!row_nonzero) {
                // Park zero rows at the bottom of the active block.
                --active_rows_;
                swap_rows(i, active_rows_);
                if (found && pi == active_rows_) pi = i;
                continue;
            }
            ++i;
        }
        return found;
    }

    void reposition_in_cross(std::size_t t) {
        std::size_t bi = t, bj = t;
        T best = magnitude(a_(t, t));
        bool have = a_(t, t) != 0;
        for (std::size_t i = t + 1; i < active_rows_; ++i) {
            if (a_(i, t) == 0) continue;
            T mag = magnitude(a_(i, t));
            if (!have || mag < best) {
                have = true;
                best = mag;
                bi = i;
                bj = t;
            }
        }
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
            if (a_(t, j) == 0) continue;
            T mag = magnitude(a_(t, j));
            if (!have || mag < best) {
                have = true;
                best = mag;
                bi = t;
                bj = j;
            }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
    }

    bool find_indivisible(std::size_t t, std::size_t& bad_row) {
        const T& p = a_(t, t);
        for (std::size_t i = t + 1; i < active_rows_; ++i) {
            const T* row = a_.row_ptr(i);
            for (std::size_t j = t + 1; j < a_.cols(); ++j)
                if (row[j] != 0 && row[j] % p != 0) {
                    bad_row = i;
                    return true;
                }
        }
        return false;
    }

    // row_dst -= q * row_src
    void row_sub(std::size_t dst, std::size_t src, const T& q) {
        axpy_row(a_, dst, src, q);
        if (opt_.want_u) axpy_row(u_, dst, src, q);
        if (opt_.want_u_inverse) {
            // U^{-1} <- U^{-1} (I + q e_dst e_src^T): col_src += q col_dst
            for (std::size_t i = 0; i < ui_.rows(); ++i)
                if (ui_(i, dst) != 0) ui_(i, src) = checked_add(ui_(i, src), checked_mul(q, ui_(i, dst)));
        }
    }

    // col_dst -= q * col_src ; rows below `from_row` of A are touched only where col_src is nonzero
    void col_sub(std::size_t dst, std::size_t src, const T& q, std::size_t from_row) {
        for (std::size_t i = from_row; i < active_rows_; ++i)
            if (a_(i, src) != 0) a_(i, dst) = checked_sub(a_(i, dst), checked_mul(q, a_(i, src)));
        if (opt_.want_v)
            for (std::size_t i = 0; i < v_.rows(); ++i)
                if (v_(i, src) != 0) v_(i, dst) = checked_sub(v_(i, dst), checked_mul(q, v_(i, src)));
        // V^{-1} <- (I + q e_src e_dst^T) V^{-1}: row_src += q row_dst
        if (opt_.want_v_inverse) axpy_row(vi_, src, dst, checked_neg(q));
    }

    static void axpy_row(Matrix<T>& m, std::size_t dst, std::size_t src, const T& q) {
        T* d = m.row_ptr(dst);
        const T* s = m.row_ptr(src);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (s[j] != 0) d[j] = checked_sub(d[j], checked_mul(q, s[j]));
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        a_.swap_rows(a, b);
        if (opt_.want_u) u_.swap_rows(a, b);
        if (opt_.want_u_inverse) ui_.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        a_.swap_cols(a, b);
        if (opt_.want_v) v_.swap_cols(a, b);
        if (opt_.want_v_inverse) vi_.swap_rows(a, b);
    }

    void negate_row(std::size_t t) {
        T* r = a_.row_ptr(t);
        for (std::size_t j = 0; j < a_.cols(); ++j) r[j] = checked_neg(r[j]);
        if (opt_.want_u) {
            T* ur = u_.row_ptr(t);
            for (std::size_t j = 0; j < u_.cols(); ++j) ur[j] = checked_neg(ur[j]);
        }
        if (opt_.want_u_inverse)
            for (std::size_t i = 0; i < ui_.rows(); ++i) ui_(i, t) = checked_neg(ui_(i, t));
    }

    Matrix<T> a_;
    SmithOptions opt_;
    Matrix<T> u_, ui_, v_, vi_;
    std::size_t active_rows_ = 0;
};

template <class T>
SmithDecomposition finish(SmithEngine<T>& eng, std::vector<T> diag, std::size_t rows, std::size_t cols,
                          const SmithOptions& opt, bool big) {
    SmithDecomposition out;
    out.rows = rows;
    out.cols = cols;
    out.used_bigint = big;
    out.factors.reserve(diag.size());
    for (const auto& d : diag) out.factors.emplace_back(d);
    if (opt.want_u) out.u = eng.u().template cast<BigInt>();
    if (opt.want_u_inverse) out.u_inverse = eng.u_inverse().template cast<BigInt>();
    if (opt.want_v) out.v = eng.v().template cast<BigInt>();
    if (opt.want_v_inverse) out.v_inverse = eng.v_inverse().template cast<BigInt>();
    return out;
}

inline void check_divisibility_chain(const SmithDecomposition& d) {
    for (std::size_t i = 0; i + 1 < d.factors.size(); ++i)
        if (d.factors[i + 1] % d.factors[i] != 0)
            throw FalsificationFinding("Smith normal form: divisibility chain broken");
}

}  // namespace detail

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw InvalidInput("determinant of non-square matrix");
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Full check of a decomposition against its input: U*A*V == D, the
/// divisibility chain, and det U, det V in {+1, -1} (when they were computed).
inline bool verify_smith(const IntMatrix& a, const SmithDecomposition& d) {
    for (std::size_t i = 0; i + 1 < d.factors.size(); ++i)
        if (d.factors[i] <= 0 || d.factors[i + 1] % d.factors[i] != 0) return false;
    if (!d.u.empty() && !d.v.empty()) {
        if (!(d.u * a * d.v == d.diagonal())) return false;
    }
    if (!d.u.empty() && boost::multiprecision::abs(determinant(d.u)) != 1) return false;
    if (!d.v.empty() && boost::multiprecision::abs(determinant(d.v)) != 1) return false;
    if (!d.u.empty() && !d.u_inverse.empty() && !(d.u * d.u_inverse == IntMatrix::identity(a.rows())))
        return false;
    if (!d.v.empty() && !d.v_inverse.empty() && !(d.v * d.v_inverse == IntMatrix::identity(a.cols())))
        return false;
    return true;
}

inline SmithDecomposition smith_normal_form(const IntMatrix& a, const SmithOptions& opt = {}) {
    bool small = true;
    for (std::size_t i = 0; i < a.rows() && small; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!detail::fits_int64(a(i, j))) {
                small = false;
                break;
            }
    SmithDecomposition out;
    bool done = false;
    if (small) {
        try {
            detail::SmithEngine<std::int64_t> eng(a.cast<std::int64_t>(), opt);
            auto diag = eng.run();
            out = detail::finish(eng, std::move(diag), a.rows(), a.cols(), opt, false);
            done = true;
        } catch (const detail::Overflow&) {
        }
    }
    if (!done) {
        detail::SmithEngine<BigInt> eng(a, opt);
        auto diag = eng.run();
        out = detail::finish(eng, std::move(diag), a.rows(), a.cols(), opt, true);
    }
    detail::check_divisibility_chain(out);
#ifdef RTORIC_VERIFY_SMITH
    if (!verify_smith(a, out)) throw FalsificationFinding("Smith normal form verification failed");
#endif
    return out;
}

inline SmithDecomposition smith_normal_form(const SparseMatrix& a, const SmithOptions& opt = {}) {
    SmithDecomposition out;
    try {
        detail::SmithEngine<std::int64_t> eng(a.to_dense<std::int64_t>(), opt);
        auto diag = eng.run();
        out = detail::finish(eng, std::move(diag), a.rows(), a.cols(), opt, false);
    } catch (const detail::Overflow&) {
        detail::SmithEngine<BigInt> eng(a.to_dense<BigInt>(), opt);
        auto diag = eng.run();
        out = detail::finish(eng, std::move(diag), a.rows(), a.cols(), opt, true);
    }
    detail::check_divisibility_chain(out);
    return out;
}

/// Rank of an integer matrix over Z/p, p a small prime.
inline std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p) {
    Matrix<std::int64_t> m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            BigInt r = a(i, j) % p;
            if (r < 0) r += p;
            m(i, j) = static_cast<std::int64_t>(r);
        }
    auto inv = [p](std::int64_t x) {
        std::int64_t r = 1, b = x, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(piv, rank);
        const std::int64_t s = inv(m(rank, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(rank, j) = m(rank, j) * s % p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, c) == 0) continue;
            const std::int64_t f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = ((m(i, j) - f * m(rank, j)) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace rtoric
