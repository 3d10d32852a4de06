#pragma once
#include "cosyx/complex.hpp"

namespace cosyx {

// F2 tensor product; layers are laid out block by block in ascending
// left degree, right factor minor inside a block
BasedComplex tensor(const BasedComplex& x, const BasedComplex& y);

BasedComplex tensor_power(const BasedComplex& x, int m);  // left fold

// index of the first cell of block (i, j) in layer i + j, with its extent
std::pair<long long, long long> block_span(const BasedComplex& t, int i,
                                           int j);

// restriction of a to block (i, j); zero elsewhere
Cochain component(const BasedComplex& t, const Cochain& a, int i, int j);

// block (i, j) as a matrix: rows left-factor cells, columns right-factor
// cells, so each column is an i-cochain of the left factor
Gf2Matrix block_matrix(const BasedComplex& t, const Cochain& a, int i, int j);
Cochain from_block_matrix(const BasedComplex& t, const Gf2Matrix& m, int i,
                          int j);

}  // namespace cosyx
