#include "orbiclan/linalg.hpp"

#include "orbiclan/errors.hpp"

#include <algorithm>

namespace orbiclan {

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

void add_scaled(Vector& y, const Rational& a, const Vector& x)
{
    if (a.is_zero())
        return;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero())
            y[k] += a * x[k];
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        m(k, k) = 1;
    return m;
}

Vector Matrix::row(std::size_t r) const
{
    return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw InputError("matrix product: dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(r, k);
            if (a.is_zero())
                continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                if (!rhs(k, c).is_zero())
                    out(r, c) += a * rhs(k, c);
        }
    return out;
}

Vector Matrix::operator*(const Vector& v) const
{
    if (cols_ != v.size())
        throw InputError("matrix-vector product: dimension mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!v[c].is_zero() && !(*this)(r, c).is_zero())
                out[r] += (*this)(r, c) * v[c];
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("matrix sum: dimension mismatch");
    Matrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
        out.data_[k] += rhs.data_[k];
    return out;
}

Matrix Matrix::operator-() const
{
    Matrix out = *this;
    for (auto& x : out.data_)
        x = -x;
    return out;
}

// ---------------------------------------------------------------------------

Vector Subspace::reduce(Vector v) const
{
    if (v.size() != ambient_)
        throw InputError("subspace: vector has wrong length");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::size_t p = pivots_[k];
        if (v[p].is_zero())
            continue;
        Rational f = v[p];
        add_scaled(v, -f, rows_[k]);
    }
    return v;
}

bool Subspace::contains(const Vector& v) const
{
    return is_zero(reduce(v));
}

bool Subspace::insert(Vector v)
{
    v = reduce(std::move(v));
    auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (lead == v.end())
        return false;
    const std::size_t p = static_cast<std::size_t>(lead - v.begin());
    Rational inv = 1 / v[p];
    for (auto& x : v)
        if (!x.is_zero())
            x *= inv;
    for (auto& row : rows_) {
        if (row[p].is_zero())
            continue;
        Rational f = row[p];
        add_scaled(row, -f, v);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

std::vector<std::size_t> Subspace::free_columns() const
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::size_t rank(const Matrix& m)
{
    Subspace rows(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.insert(m.row(r));
    return rows.dim();
}

std::vector<Vector> nullspace(const Matrix& m)
{
    Subspace rows(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.insert(m.row(r));
    std::vector<Vector> out;
    for (std::size_t f : rows.free_columns()) {
        Vector x(m.cols());
        x[f] = 1;
        for (std::size_t k = 0; k < rows.dim(); ++k)
            x[rows.pivots()[k]] = -rows.basis()[k][f];
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw InputError("solve: right-hand side has wrong length");
    // Row-reduce the augmented matrix [m | b].
    const std::size_t n = m.cols();
    Subspace aug(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Vector row = m.row(r);
        row.push_back(b[r]);
        aug.insert(std::move(row));
    }
    Vector x(n);
    for (std::size_t k = 0; k < aug.dim(); ++k) {
        const std::size_t p = aug.pivots()[k];
        if (p == n)
            return std::nullopt;
        x[p] = aug.basis()[k][n];
    }
    return x;
}

} // namespace orbiclan
