#include "relmod/rng.hpp"

#include <algorithm>
#include <cmath>

namespace relmod {

std::uint64_t CounterRng::word(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    const double u = next_open_double();
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

Complex CounterRng::next_complex_gaussian() {
    const double u = next_open_double();
    const double v = next_double();
    // |z|^2 ~ Exp(1), so E|z|^2 = 1 (real and imaginary parts N(0, 1/2) each).
    const double r = std::sqrt(-std::log(u));
    return Complex(r * std::cos(2.0 * M_PI * v), r * std::sin(2.0 * M_PI * v));
}

Matrix gaussian_matrix(CounterRng& rng, int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.next_complex_gaussian();
    return g;
}

Matrix random_psd(CounterRng& rng, int dim, int rank) {
    rank = std::clamp(rank, 0, dim);
    if (rank == 0) return Matrix::Zero(dim, dim);
    Matrix g = gaussian_matrix(rng, dim, rank);
    return hermitize(g * g.adjoint());
}

Matrix random_unitary(CounterRng& rng, int dim) {
    Matrix g = gaussian_matrix(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        double a = std::abs(d);
        q.col(i) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

NormalFunctional random_functional(CounterRng& rng, const Algebra& a, int rank,
                                   bool normalize) {
    std::vector<Matrix> d;
    d.reserve(a.blocks.size());
    for (int n : a.blocks) d.push_back(random_psd(rng, n, rank < 0 ? n : std::min(rank, n)));
    NormalFunctional f(a, std::move(d));
    if (normalize) {
        const double t = f.total();
        if (t > 0.0) f = (1.0 / t) * f;
    }
    return f;
}

}  // namespace relmod
