#pragma once
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gha/field.hpp"

namespace gha {

/* Dense exact matrices, row-major. The hot kernels (rref elimination
   sweep, matmul, kronecker) run their independent inner loops under
   OpenMP; gha::ref keeps plain serial versions that tests and the
   benchmark compare against. All results are exact, so parallel and
   serial paths agree entry-for-entry. */

template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix() : f_{}, r_(0), c_(0) {}
    Matrix(F f, std::size_t rows, std::size_t cols)
        : f_(f), r_(rows), c_(cols), e_(rows * cols, f.zero()) {}

    static Matrix identity(F f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const F& field() const { return f_; }

    Elem& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  private:
    F f_;
    std::size_t r_, c_;
    std::vector<Elem> e_;
};

template <class F>
bool equal(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.field().eq(a.at(i, j), b.at(i, j))) return false;
    return true;
}

template <class F>
bool is_zero(const Matrix<F>& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.field().is_zero(a.at(i, j))) return false;
    return true;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
    Matrix<F> t(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
    return t;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.rows() == b.rows(), "hstack: row mismatch");
    Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.cols() == b.cols(), "vstack: column mismatch");
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

template <class F>
Matrix<F> block(const Matrix<F>& a, std::size_t r0, std::size_t c0, std::size_t nr,
                std::size_t nc) {
    require(r0 + nr <= a.rows() && c0 + nc <= a.cols(), "block: out of range");
    Matrix<F> m(a.field(), nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = a.at(r0 + i, c0 + j);
    return m;
}

template <class F>
void paste(Matrix<F>& a, std::size_t r0, std::size_t c0, const Matrix<F>& sub) {
    require(r0 + sub.rows() <= a.rows() && c0 + sub.cols() <= a.cols(), "paste: out of range");
    for (std::size_t i = 0; i < sub.rows(); ++i)
        for (std::size_t j = 0; j < sub.cols(); ++j) a.at(r0 + i, c0 + j) = sub.at(i, j);
}

template <class F>
Matrix<F> columns(const Matrix<F>& a, const std::vector<std::size_t>& idx) {
    Matrix<F> m(a.field(), a.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        require(idx[j] < a.cols(), "columns: index out of range");
        for (std::size_t i = 0; i < a.rows(); ++i) m.at(i, j) = a.at(i, idx[j]);
    }
    return m;
}

namespace detail {
constexpr std::size_t kParallelCutoff = 48; // rows below this stay serial
}

template <class F>
Matrix<F> matmul(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.cols() == b.rows(), "matmul: inner dimension mismatch");
    const F& f = a.field();
    Matrix<F> m(f, a.rows(), b.cols());
    const long n = (long)a.rows();
#pragma omp parallel for schedule(static) if (n >= (long)detail::kParallelCutoff)
    for (long i = 0; i < n; ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a.at((std::size_t)i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                m.at((std::size_t)i, j) = f.add(m.at((std::size_t)i, j), f.mul(aik, b.at(k, j)));
        }
    return m;
}

template <class F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
    const F& f = a.field();
    Matrix<F> m(f, a.rows() * b.rows(), a.cols() * b.cols());
    const long n = (long)a.rows();
#pragma omp parallel for schedule(static) if (n * (long)b.rows() >= (long)detail::kParallelCutoff)
    for (long i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& aij = a.at((std::size_t)i, j);
            if (f.is_zero(aij)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.at((std::size_t)i * b.rows() + k, j * b.cols() + l) = f.mul(aij, b.at(k, l));
        }
    return m;
}

template <class F>
struct RrefResult {
    Matrix<F> mat;
    std::vector<std::size_t> pivots;
};

/* Canonical reduced row echelon form: leftmost pivot column, first
   nonzero row, every pivot 1 with zeros above and below. Deterministic
   for identical input regardless of thread count. */
template <class F>
RrefResult<F> rref(Matrix<F> m) {
    const F f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && f.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        const auto pivinv = f.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), pivinv);
        const long nrows = (long)m.rows();
#pragma omp parallel for schedule(static) if (nrows >= (long)detail::kParallelCutoff)
        for (long i = 0; i < nrows; ++i) {
            if ((std::size_t)i == row) continue;
            const auto c = m.at((std::size_t)i, col);
            if (f.is_zero(c)) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at((std::size_t)i, j) =
                    f.sub(m.at((std::size_t)i, j), f.mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).pivots.size();
}

/* Basis of the right null space; one column per free column of m,
   normalized with a 1 in the free coordinate (canonical). */
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix<F> k(f, m.cols(), free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        k.at(free_cols[t], t) = f.one();
        for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
            k.at(r.pivots[pr], t) = f.neg(r.mat.at(pr, free_cols[t]));
    }
    return k;
}

/* Any exact solution of a.x = b (free variables set to zero), or
   nullopt when inconsistent. */
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.rows() == b.rows(), "solve: row mismatch");
    const F& f = a.field();
    auto r = rref(hstack(a, b));
    for (auto p : r.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix<F> x(f, a.cols(), b.cols());
    for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivots[pr], j) = r.mat.at(pr, a.cols() + j);
    return x;
}

/* Serial reference kernels; kept for tests and the benchmark. */
namespace ref {

template <class F>
Matrix<F> matmul(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.cols() == b.rows(), "matmul: inner dimension mismatch");
    const F& f = a.field();
    Matrix<F> m(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto acc = f.zero();
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
            m.at(i, j) = acc;
        }
    return m;
}

template <class F>
RrefResult<F> rref(Matrix<F> m) {
    const F f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && f.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        const auto pivinv = f.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), pivinv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const auto c = m.at(i, col);
            if (f.is_zero(c)) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

} // namespace ref

} // namespace gha
