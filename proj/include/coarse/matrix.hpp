#pragma once

#include "coarse/norms.hpp"

#include <vector>

namespace coarse {

/// Invertible square matrix over a fraction field, with the inverse computed
/// on construction (cofactor expansion; n <= 4). Immutable.
class MatrixOverRing {
public:
    MatrixOverRing(int n, std::vector<RingElement> entries);

    static MatrixOverRing identity(int n, int field);

    int n() const { return n_; }
    int field() const { return field_; }
    const RingElement& at(int i, int j) const { return a_[i * n_ + j]; }
    const RingElement& inv_at(int i, int j) const { return inv_[i * n_ + j]; }
    const RingElement& det() const { return det_; }

    MatrixOverRing inverse() const;
    friend MatrixOverRing operator*(const MatrixOverRing& a, const MatrixOverRing& b);
    friend bool operator==(const MatrixOverRing& a, const MatrixOverRing& b);

    bool is_identity() const;
    bool is_unipotent_upper() const;
    bool is_diagonal() const;

    std::string str() const;

private:
    MatrixOverRing() = default;
    int n_ = 0;
    int field_ = 0;
    std::vector<RingElement> a_;
    std::vector<RingElement> inv_;
    RingElement det_;

    static RingElement determinant(int n, const std::vector<RingElement>& m);
};

/// Discrete length: log max_{ij} { gamma(g_ij), gamma(g^ij) } in exponent
/// units of the norm, clamped below at 0 so the identity has length 0.
/// Multiply by norm.scale() for the natural-log value.
long long length_gl(const Norm& norm, const MatrixOverRing& g);

/// A length function assembled from non-archimedean norms with positive
/// rational weights: l(g) = sum_i w_i * length_gl(norm_i, g). Exact.
struct LengthFunction {
    struct Part {
        Norm norm;
        Rat weight;
    };
    std::vector<Part> parts;

    static LengthFunction single(const Norm& n) { return {{{n, Rat(1)}}}; }
    Rat operator()(const MatrixOverRing& g) const;
};

/// Archimedean length per the operator-2-norm reading:
/// log max { ||g||, ||g^-1|| } for a matrix with rational entries, computed
/// by power iteration on g^T g to relative tolerance `tol`. Returns the value
/// and a half-width hint of the iteration's final movement.
struct ArchLength {
    double value;
    double tol;
};
ArchLength arch_length_gl(const MatrixOverRing& g, double tol = 1e-9);
/// Same, for matrices over a rational function field mapped through an
/// evaluation point first.
ArchLength arch_length_gl(const Norm& eval_norm, const MatrixOverRing& g, double tol = 1e-9);

/// Dilation by theta: entry (i,j) scaled by theta^(j-i). An automorphism of
/// the unipotent upper-triangular group.
MatrixOverRing dilation(const RingElement& theta, const MatrixOverRing& u);

/// Minimal k >= 0 with Theta^-k(u) of length zero, i.e. with every entry of
/// the dilated matrix and its inverse in the norm's ring of integers.
/// Requires gamma(theta) > 1.
long long unipotent_level(const MatrixOverRing& u, const RingElement& theta, const Norm& norm);

/// max|k_i| * |exponent of gamma(pi)|: the sup-norm reading of the length of
/// diag(pi^{k_1}, ..., pi^{k_n}).
long long diagonal_length(const Norm& norm, const RingElement& uniformizer,
                          const std::vector<long long>& exponents);

} // namespace coarse
