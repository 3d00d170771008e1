#include "sbtk/fock_basis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace sbtk {

std::size_t FockBasis::dimension(int modes, int n_max, std::size_t cap) {
  require(modes >= 1, "enumerate_basis: need at least one mode");
  require(n_max >= 0, "enumerate_basis: n_max must be nonnegative");
  // C(modes + n_max, modes), multiplying smallest factors first
  unsigned long long dim = 1;
  for (int i = 1; i <= modes; ++i) {
    unsigned long long num = static_cast<unsigned long long>(n_max) + i;
    dim = dim * num / i;  // exact: product of i consecutive integers divisible by i!
    if (dim > 100 * static_cast<unsigned long long>(cap)) break;
  }
  if (dim > cap) {
    std::ostringstream os;
    os << "enumerate_basis: " << modes << " modes at n_max=" << n_max << " give "
       << dim << " states, above the cap of " << cap
       << "; lower n_max or the mode count, or raise the state cap";
    fail(os.str());
  }
  return static_cast<std::size_t>(dim);
}

std::shared_ptr<const FockBasis> FockBasis::enumerate(int modes, int n_max, bool with_qubit,
                                                      std::size_t state_cap) {
  std::size_t count = dimension(modes, n_max, state_cap);
  require(n_max <= std::numeric_limits<std::uint16_t>::max(), "enumerate_basis: n_max too large");

  auto basis = std::shared_ptr<FockBasis>(new FockBasis());
  basis->modes_ = modes;
  basis->n_max_ = n_max;
  basis->with_qubit_ = with_qubit;
  basis->count_ = count;
  basis->occ_.reserve(count * modes);
  basis->total_.reserve(count);
  basis->sector_begin_.assign(n_max + 2, 0);

  std::vector<std::uint16_t> occ(modes, 0);
  for (int total = 0; total <= n_max; ++total) {
    basis->sector_begin_[total] = basis->total_.size();
    // occupation vectors with fixed total, lexicographically ascending
    std::fill(occ.begin(), occ.end(), 0);
    occ[modes - 1] = static_cast<std::uint16_t>(total);
    int pos = modes - 1;
    while (true) {
      basis->occ_.insert(basis->occ_.end(), occ.begin(), occ.end());
      basis->total_.push_back(static_cast<std::uint16_t>(total));
      // next composition: move one unit from the tail to the previous slot
      int j = modes - 1;
      while (j > 0 && occ[j] == 0) --j;
      if (j == 0) break;
      int tail = occ[j];
      occ[j] = 0;
      occ[j - 1] += 1;
      occ[modes - 1] = static_cast<std::uint16_t>(tail - 1);
      (void)pos;
    }
  }
  basis->sector_begin_[n_max + 1] = basis->total_.size();
  require(basis->total_.size() == count, "enumerate_basis: enumeration/dimension mismatch");
  return basis;
}

long FockBasis::index_of(const std::uint16_t* target) const {
  int total = 0;
  for (int j = 0; j < modes_; ++j) total += target[j];
  if (total > n_max_) return -1;
  std::size_t lo = sector_begin_[total];
  std::size_t hi = sector_begin_[total + 1];
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const std::uint16_t* s = state(mid);
    int cmp = 0;
    for (int j = 0; j < modes_; ++j) {
      if (s[j] != target[j]) {
        cmp = s[j] < target[j] ? -1 : 1;
        break;
      }
    }
    if (cmp < 0)
      lo = mid + 1;
    else if (cmp > 0)
      hi = mid;
    else
      return static_cast<long>(mid);
  }
  return -1;
}

long FockBasis::raised(std::size_t i, int j) const {
  if (total_[i] >= n_max_) return -1;
  std::vector<std::uint16_t> t(state(i), state(i) + modes_);
  t[j] += 1;
  return index_of(t.data());
}

long FockBasis::lowered(std::size_t i, int j) const {
  if (occ(i, j) == 0) return -1;
  std::vector<std::uint16_t> t(state(i), state(i) + modes_);
  t[j] -= 1;
  return index_of(t.data());
}

}  // namespace sbtk
