#pragma once

#include <stdexcept>
#include <string>

namespace iscg {

enum class Errc {
  agent_without_access,
  id_out_of_range,
  empty_game,
  not_total,
  unknown_agent,
  empty_coalition,
  length_mismatch,
  not_a_partition,
  same_resource,
  chain_invalid,
  search_bound_exceeded,
  enumeration_bound_exceeded,
  hypothesis_violated,
  invalid_config,
  infeasible_allocation,
  parse_error,
};

/// All library failures are thrown as Error; code() routes CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

  /// true for the resource-budget errors (CLI exit 3), false otherwise.
  bool is_bound_error() const {
    return code_ == Errc::search_bound_exceeded ||
           code_ == Errc::enumeration_bound_exceeded;
  }

 private:
  Errc code_;
};

}  // namespace iscg
