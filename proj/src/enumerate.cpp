#include "iscg/enumerate.hpp"

#include <sstream>

namespace iscg {

FeasibleEnumeration::FeasibleEnumeration(const Instance& inst, long long bound)
    : inst_(&inst), count_(inst.feasible_count()) {
  if (count_ > bound) {
    std::ostringstream os;
    os << "feasible space has " << count_ << " allocations, bound is " << bound;
    throw Error(Errc::enumeration_bound_exceeded, os.str());
  }
  digits_.assign(static_cast<std::size_t>(inst.agent_count()), 0);
}

void FeasibleEnumeration::seek(long long index) {
  cursor_ = index;
  // mixed-radix decode, least significant digit = last agent
  long long rest = index;
  for (int j = inst_->agent_count(); j >= 1; --j) {
    long long radix = static_cast<long long>(inst_->accessible(j).size());
    digits_[static_cast<std::size_t>(j - 1)] = static_cast<int>(rest % radix);
    rest /= radix;
  }
}

std::optional<Allocation> FeasibleEnumeration::next() {
  if (cursor_ >= count_) return std::nullopt;
  int n = inst_->agent_count();
  std::vector<ResourceId> assignment(static_cast<std::size_t>(n));
  for (AgentId j = 1; j <= n; ++j)
    assignment[static_cast<std::size_t>(j - 1)] =
        inst_->accessible(j)[static_cast<std::size_t>(digits_[static_cast<std::size_t>(j - 1)])];
  Allocation result(std::move(assignment), inst_->resource_count(), true);

  ++cursor_;
  for (int j = n - 1; j >= 0; --j) {  // odometer, last agent fastest
    auto& d = digits_[static_cast<std::size_t>(j)];
    if (++d < static_cast<int>(inst_->accessible(j + 1).size())) break;
    d = 0;
  }
  return result;
}

bool for_each_feasible(const Instance& inst, long long bound,
                       const std::function<bool(const Allocation&)>& visit) {
  FeasibleEnumeration stream(inst, bound);
  while (auto a = stream.next())
    if (!visit(*a)) return false;
  return true;
}

std::vector<Allocation> all_feasible(const Instance& inst, long long bound) {
  std::vector<Allocation> out;
  FeasibleEnumeration stream(inst, bound);
  out.reserve(static_cast<std::size_t>(stream.count()));
  while (auto a = stream.next()) out.push_back(std::move(*a));
  return out;
}

}  // namespace iscg
