#pragma once

#include <vector>

#include "berlab/berezin.hpp"
#include "berlab/cmatrix.hpp"
#include "berlab/rkhs.hpp"

namespace berlab {

/// T = [T_ij] on a direct sum, with T_ij mapping component j into component i.
class BlockOperator {
 public:
  using Grid = std::vector<std::vector<ComplexMatrix>>;

  const Grid& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t i, std::size_t j) const { return blocks_.at(i).at(j); }
  const DirectSumSpace& spaces() const noexcept { return spaces_; }
  const ComplexMatrix& flat() const noexcept { return flat_; }
  std::size_t size() const noexcept { return blocks_.size(); }

  /// Cuts flat() back into blocks at block_offsets().
  Grid disassemble() const;

 private:
  BlockOperator(Grid blocks, DirectSumSpace spaces, ComplexMatrix flat)
      : blocks_(std::move(blocks)), spaces_(std::move(spaces)), flat_(std::move(flat)) {}

  friend BlockOperator assemble(BlockOperator::Grid blocks, DirectSumSpace spaces);

  Grid blocks_;
  DirectSumSpace spaces_;
  ComplexMatrix flat_;
};

/// ShapeMismatch unless blocks is n x n for n components and block (i, j)
/// is dim_i x dim_j.
BlockOperator assemble(BlockOperator::Grid blocks, DirectSumSpace spaces);

/// [[0, x], [y, 0]] on a two-component sum.
BlockOperator off_diag(const ComplexMatrix& x, const ComplexMatrix& y, const DirectSumSpace& spaces);

/// [[x, 0], [0, 0]] on a two-component sum.
BlockOperator embed_corner(const ComplexMatrix& x, const DirectSumSpace& spaces);

enum class CompressionMode {
  HouNorm,  // every entry ||T_ij||
  BerDiag,  // ber(T_ii) on the diagonal, ||T_ij|| off it
};

struct Compression {
  ComplexMatrix matrix;  // real, entrywise nonnegative
  CompressionMode mode;
  SearchConfig config;
};

Compression compress(const BlockOperator& t, CompressionMode mode, const SearchConfig& cfg = {});

}  // namespace berlab
