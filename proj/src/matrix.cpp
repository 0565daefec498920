#include "l2curve/matrix.hpp"

// Matrix<K> is header-only; this translation unit pins the two supported
// instantiations so template bugs surface at library build time.

namespace l2c {

template class Matrix<GaussianRational>;
template class Matrix<Complex>;

template std::vector<int> rref_in_place(Matrix<GaussianRational>&, double);
template std::vector<int> rref_in_place(Matrix<Complex>&, double);
template int rank(const Matrix<GaussianRational>&, double);
template int rank(const Matrix<Complex>&, double);
template Matrix<GaussianRational> kernel_basis(const Matrix<GaussianRational>&, double);
template Matrix<Complex> kernel_basis(const Matrix<Complex>&, double);

} // namespace l2c
