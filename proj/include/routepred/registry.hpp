#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "routepred/plate.hpp"

namespace routepred {

/// A registered vehicle. mobility_pattern is 1 when the vehicle turned at
/// this crossroad on most past trips, 0 when it mostly went straight.
struct VehicleRecord {
  PlateText plate;
  int mobility_pattern = 0;

  VehicleRecord(PlateText p, int mp);

  bool operator==(const VehicleRecord&) const = default;
};

/// Plate-keyed vehicle store. Iteration and serialization are in plate order.
class Registry {
 public:
  std::optional<VehicleRecord> lookup(const PlateText& plate) const;

  /// Inserts or replaces (last write wins).
  void upsert(const VehicleRecord& record);

  /// Returns whether a record was removed.
  bool remove(const PlateText& plate);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const std::map<std::string, VehicleRecord>& records() const noexcept { return records_; }

  /// Header `plate,mp` then one `PLATE,D` line per record, sorted, LF endings.
  std::string serialize() const;

  /// Throws ParseError (with line number) or DuplicateKey.
  static Registry parse(std::string_view content);

  static Registry load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  bool operator==(const Registry&) const = default;

 private:
  std::map<std::string, VehicleRecord> records_;
};

}  // namespace routepred
