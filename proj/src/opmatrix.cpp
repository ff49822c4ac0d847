#include "berlab/opmatrix.hpp"

#include "berlab/error.hpp"

namespace berlab {

BlockOperator assemble(BlockOperator::Grid blocks, DirectSumSpace spaces) {
  const std::size_t n = spaces.size();
  if (blocks.size() != n) throw Error(Errc::ShapeMismatch, "block grid size differs from component count");
  const std::vector<std::size_t> offsets = block_offsets(spaces);
  ComplexMatrix flat(spaces.total_dim(), spaces.total_dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (blocks[i].size() != n) throw Error(Errc::ShapeMismatch, "block grid is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix& b = blocks[i][j];
      if (b.rows() != spaces.component(i).dim() || b.cols() != spaces.component(j).dim()) {
        throw Error(Errc::ShapeMismatch, "block (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") has the wrong shape");
      }
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) flat(offsets[i] + r, offsets[j] + c) = b(r, c);
      }
    }
  }
  return BlockOperator(std::move(blocks), std::move(spaces), std::move(flat));
}

BlockOperator::Grid BlockOperator::disassemble() const {
  const std::vector<std::size_t> offsets = block_offsets(spaces_);
  Grid out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      ComplexMatrix b(spaces_.component(i).dim(), spaces_.component(j).dim());
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) = flat_(offsets[i] + r, offsets[j] + c);
      }
      out[i].push_back(std::move(b));
    }
  }
  return out;
}

namespace {
void require_pair(const DirectSumSpace& spaces) {
  if (spaces.size() != 2) throw Error(Errc::ShapeMismatch, "expected a two-component direct sum");
}
}  // namespace

BlockOperator off_diag(const ComplexMatrix& x, const ComplexMatrix& y, const DirectSumSpace& spaces) {
  require_pair(spaces);
  const std::size_t d1 = spaces.component(0).dim();
  const std::size_t d2 = spaces.component(1).dim();
  BlockOperator::Grid g(2);
  g[0] = {ComplexMatrix(d1, d1), x};
  g[1] = {y, ComplexMatrix(d2, d2)};
  return assemble(std::move(g), spaces);
}

BlockOperator embed_corner(const ComplexMatrix& x, const DirectSumSpace& spaces) {
  require_pair(spaces);
  const std::size_t d1 = spaces.component(0).dim();
  const std::size_t d2 = spaces.component(1).dim();
  BlockOperator::Grid g(2);
  g[0] = {x, ComplexMatrix(d1, d2)};
  g[1] = {ComplexMatrix(d2, d1), ComplexMatrix(d2, d2)};
  return assemble(std::move(g), spaces);
}

Compression compress(const BlockOperator& t, CompressionMode mode, const SearchConfig& cfg) {
  const std::size_t n = t.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix& b = t.block(i, j);
      if (i == j && mode == CompressionMode::BerDiag) {
        if (!b.is_square()) throw Error(Errc::ShapeMismatch, "diagonal block is not square");
        m(i, j) = berezin_number(b, t.spaces().component(i), cfg).value;
      } else {
        m(i, j) = operator_norm(b);
      }
    }
  }
  return Compression{std::move(m), mode, cfg};
}

}  // namespace berlab
