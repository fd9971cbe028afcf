#include "iscg/examples.hpp"

namespace iscg::examples {

KernelDemo kernel_demo() {
  KernelDemo fx{full_access_instance(8, 4), {}, {1, 2, 6}};
  fx.a = validate_allocation(fx.inst, {1, 1, 2, 2, 2, 3, 3, 3});
  return fx;
}

StableNotMaximal stable_not_maximal() {
  Instance inst = full_access_instance(15, 2);
  CoalitionStructure C = CoalitionStructure::partition(
      15, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}, {13, 14, 15}});
  // r1 = {1,2,4,5,7,8,10,11}, r2 = {3,6,9,12,13,14,15}
  Allocation a = validate_allocation(inst, {1, 1, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 2, 2, 2});
  // r1 = {1,2,4,7,8,10,13,14}, r2 = {3,5,6,9,11,12,15}
  Allocation improved =
      validate_allocation(inst, {1, 1, 2, 1, 2, 2, 1, 1, 2, 1, 2, 2, 1, 1, 2});
  return StableNotMaximal{std::move(inst), std::move(C), std::move(a), std::move(improved)};
}

NonMonotoneBlocking non_monotone_blocking() {
  Instance inst = full_access_instance(18, 4);
  CoalitionStructure C = CoalitionStructure::partition(
      18, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}, {14, 15, 16, 17, 18}});
  // a:  r1 = {1,14,15,16}, r2 = {2,3,4,5}, r3 = {6,7,8,9,17}, r4 = {10,11,12,13,18}
  Allocation a = validate_allocation(
      inst, {1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 1, 1, 1, 3, 4});
  // induced: r1 = {6,10,14,15,16}, r2 = {7,8,9,11,12}, r3 = {1,2,3,17}, r4 = {4,5,13,18}
  Allocation induced = validate_allocation(
      inst, {3, 3, 3, 4, 4, 1, 2, 2, 2, 1, 2, 2, 4, 1, 1, 1, 3, 4});
  Coalition c{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  return NonMonotoneBlocking{std::move(inst), std::move(C), std::move(a),
                             std::move(induced), std::move(c)};
}

OverlapNoStable overlap_no_stable() {
  Instance inst = instance_from_resource_sets(3, 2, {{1, 3}, {2, 3}});
  CoalitionStructure C = CoalitionStructure::family(3, {{1, 3}, {2, 3}});
  return OverlapNoStable{std::move(inst), std::move(C)};
}

}  // namespace iscg::examples
