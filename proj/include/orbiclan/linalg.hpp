#pragma once

#include "orbiclan/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace orbiclan {

using Vector = std::vector<Rational>;

bool is_zero(const Vector& v);

/// y += a * x
void add_scaled(Vector& y, const Rational& a, const Vector& x);

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;

    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-() const;
    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// A subspace of Q^n kept as a reduced row echelon basis, grown one vector
/// at a time. reduce() returns the canonical residue of a vector: the
/// unique representative of its coset that vanishes on every pivot column.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    /// Returns true iff v was not already in the span.
    bool insert(Vector v);

    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<Vector>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Columns that are not pivots, ascending. Their unit vectors span a
    /// complement of the subspace.
    std::vector<std::size_t> free_columns() const;

private:
    std::size_t ambient_;
    std::vector<Vector> rows_;          // sorted by pivot column
    std::vector<std::size_t> pivots_;
};

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column of the echelon form.
std::vector<Vector> nullspace(const Matrix& m);

/// Some x with m x = b, or nullopt if the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

} // namespace orbiclan
