#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlat/field.hpp"
#include "dlat/poset.hpp"

namespace dlat {

using Vec = std::vector<FiniteField::Elem>;
using Mat = std::vector<Vec>;

// Reduced row-echelon form with zero rows dropped; pivots leftmost.
Mat rref(const FiniteField& f, Mat rows);
std::size_t rank(const FiniteField& f, const Mat& rows);
// Basis (in RREF) of {x : rows * x = 0} for vectors of length n.
Mat null_space(const FiniteField& f, const Mat& rows, std::size_t n);

// Every subspace of GF(q)^n as an RREF basis, by dimension then
// enumeration order. SizeLimitError if more than `limit`.
std::vector<Mat> all_subspaces(const FiniteField& f, std::size_t n, std::size_t limit);
// Gaussian binomial [n choose d]_q.
std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d);

std::uint64_t encode_vector(const Vec& v, std::uint32_t q);
Vec decode_vector(std::uint64_t code, std::uint32_t q, std::size_t n);
// Point set of the span, as a bitset over all q^n vectors.
Bits span_points(const FiniteField& f, const Mat& basis, std::size_t n);

std::string vector_label(const Vec& v, std::uint32_t q);
std::string subspace_label(const Mat& basis, std::uint32_t q);

}  // namespace dlat
