#include "pecok/metrics.hpp"

#include "pecok/errors.hpp"

#include <algorithm>
#include <vector>

namespace pecok {
namespace {

void check_sizes(const LabelPartition& p, const LabelPartition& q) {
  if (p.n() != q.n()) throw ParameterError("partitions cover different numbers of points");
}

}  // namespace

long split_join(const LabelPartition& p, const LabelPartition& q) {
  check_sizes(p, q);
  const auto kp = static_cast<std::size_t>(p.k());
  const auto kq = static_cast<std::size_t>(q.k());
  std::vector<long> overlap(kp * kq, 0);
  for (std::size_t a = 0; a < p.n(); ++a) {
    ++overlap[static_cast<std::size_t>(p.label(a)) * kq + static_cast<std::size_t>(q.label(a))];
  }
  long row_max = 0;
  for (std::size_t i = 0; i < kp; ++i) {
    row_max += *std::max_element(overlap.begin() + static_cast<long>(i * kq),
                                 overlap.begin() + static_cast<long>((i + 1) * kq));
  }
  long col_max = 0;
  for (std::size_t j = 0; j < kq; ++j) {
    long best = 0;
    for (std::size_t i = 0; i < kp; ++i) best = std::max(best, overlap[i * kq + j]);
    col_max += best;
  }
  return 2 * static_cast<long>(p.n()) - row_max - col_max;
}

bool exact_recovery(const LabelPartition& p, const LabelPartition& q) {
  check_sizes(p, q);
  return LabelPartition::canonical(p.labels()) == LabelPartition::canonical(q.labels());
}

}  // namespace pecok
