#include "routepred/registry.hpp"

#include "routepred/error.hpp"
#include "routepred/text.hpp"

namespace routepred {

namespace {
constexpr std::string_view kHeader = "plate,mp";
}

VehicleRecord::VehicleRecord(PlateText p, int mp) : plate(std::move(p)), mobility_pattern(mp) {
  if (mp != 0 && mp != 1) throw InvalidParameter("mobility pattern must be 0 or 1");
}

std::optional<VehicleRecord> Registry::lookup(const PlateText& plate) const {
  const auto it = records_.find(plate.str());
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void Registry::upsert(const VehicleRecord& record) { records_.insert_or_assign(record.plate.str(), record); }

bool Registry::remove(const PlateText& plate) { return records_.erase(plate.str()) > 0; }

std::string Registry::serialize() const {
  std::string out(kHeader);
  out.push_back('\n');
  for (const auto& [plate, record] : records_) {
    out += plate;
    out += record.mobility_pattern == 1 ? ",1\n" : ",0\n";
  }
  return out;
}

Registry Registry::parse(std::string_view content) {
  const auto rows = text::lines(content);
  if (rows.empty() || rows.front() != kHeader) throw ParseError(1, "registry header must be 'plate,mp'");
  Registry registry;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = text::split(rows[i], ',');
    if (fields.size() != 2) throw ParseError(line_no, "expected 'PLATE,D'");
    if (fields[1] != "0" && fields[1] != "1") throw ParseError(line_no, "mobility pattern must be 0 or 1");
    std::optional<PlateText> plate;
    try {
      plate.emplace(std::string(fields[0]));
    } catch (const CharsetError& e) {
      throw ParseError(line_no, e.what());
    }
    if (registry.records_.contains(plate->str())) {
      throw DuplicateKey(line_no, "duplicate plate '" + plate->str() + "'");
    }
    registry.upsert(VehicleRecord(*plate, fields[1] == "1" ? 1 : 0));
  }
  return registry;
}

Registry Registry::load(const std::filesystem::path& path) { return parse(text::read_file(path)); }

void Registry::save(const std::filesystem::path& path) const { text::write_file(path, serialize()); }

}  // namespace routepred
