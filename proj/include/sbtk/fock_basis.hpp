#ifndef SBTK_FOCK_BASIS_HPP
#define SBTK_FOCK_BASIS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sbtk/common.hpp"

namespace sbtk {

/*
 * Occupation-number basis of the symmetric Fock space over finitely many
 * modes, truncated at a maximum total occupation.  States are ordered by
 * (total occupation, lexicographic) so particle-number sectors are
 * contiguous blocks.  Optionally tensored with the qubit, in which case the
 * layout is channel-major: index = channel * fock_size() + fock_index with
 * channel 0 = e_1 and channel 1 = e_{-1}.
 */
class FockBasis {
 public:
  static constexpr std::size_t default_state_cap = 2000000;

  static std::shared_ptr<const FockBasis> enumerate(int modes, int n_max, bool with_qubit,
                                                    std::size_t state_cap = default_state_cap);

  // C(modes + n_max, modes) with overflow detection; throws above `cap`.
  static std::size_t dimension(int modes, int n_max, std::size_t cap);

  int modes() const { return modes_; }
  int n_max() const { return n_max_; }
  bool with_qubit() const { return with_qubit_; }

  std::size_t fock_size() const { return count_; }
  std::size_t size() const { return with_qubit_ ? 2 * count_ : count_; }

  int occ(std::size_t i, int j) const { return occ_[i * modes_ + j]; }
  int total(std::size_t i) const { return total_[i]; }
  const std::uint16_t* state(std::size_t i) const { return occ_.data() + i * modes_; }

  // Dense index of an occupation vector; -1 when outside the truncation.
  long index_of(const std::uint16_t* occ) const;

  long raised(std::size_t i, int j) const;   // index of state + e_j, -1 if truncated away
  long lowered(std::size_t i, int j) const;  // index of state - e_j, -1 if occ is 0

  // First index of the total-occupation-n block (== number of states with total < n).
  std::size_t sector_begin(int n) const { return sector_begin_[n]; }

 private:
  FockBasis() = default;

  int modes_ = 0;
  int n_max_ = 0;
  bool with_qubit_ = false;
  std::size_t count_ = 0;
  std::vector<std::uint16_t> occ_;      // count_ x modes_
  std::vector<std::uint16_t> total_;    // per state
  std::vector<std::size_t> sector_begin_;  // n_max_ + 2 entries
};

using BasisPtr = std::shared_ptr<const FockBasis>;

inline BasisPtr enumerate_basis(int modes, int n_max, bool with_qubit,
                                std::size_t state_cap = FockBasis::default_state_cap) {
  return FockBasis::enumerate(modes, n_max, with_qubit, state_cap);
}

}  // namespace sbtk

#endif
