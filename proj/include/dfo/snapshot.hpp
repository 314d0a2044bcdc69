#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include "dfo/oracle.hpp"

namespace dfo {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

// Binary layout is described in docs/snapshot_format.md. Build timings are
// left out so equal inputs give byte-identical files.
void save_snapshot(std::ostream& out, const Oracle& oracle);
void save_snapshot_file(const std::string& path, const Oracle& oracle);

// `overrides` supplies the runtime-only settings (strict mode, jobs).
std::unique_ptr<Oracle> load_snapshot(std::istream& in, const OracleConfig& overrides = {});
std::unique_ptr<Oracle> load_snapshot_file(const std::string& path, const OracleConfig& overrides = {});

}  // namespace dfo
