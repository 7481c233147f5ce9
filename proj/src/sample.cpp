#include "routepred/sample.hpp"

#include <cmath>

#include "routepred/error.hpp"
#include "routepred/text.hpp"

namespace routepred {

namespace {
constexpr std::string_view kHeader = "dv,mp,label";
}

Label parse_label(std::string_view s) {
  if (s == "S") return Label::Straight;
  if (s == "T") return Label::Turn;
  throw InvalidInput("label must be S or T, got '" + std::string(s) + "'");
}

void validate(const Sample& s) {
  if (!std::isfinite(s.dv)) throw InvalidInput("sample dv must be finite");
  if (s.mp != 0 && s.mp != 1) throw InvalidInput("sample mp must be 0 or 1");
}

void require_both_classes(std::span<const Sample> data) {
  bool straight = false;
  bool turn = false;
  for (const auto& s : data) (s.label == Label::Straight ? straight : turn) = true;
  if (!straight || !turn) {
    throw DegenerateDataset("training data must contain both S and T samples (got " +
                            std::to_string(data.size()) + " samples, single class)");
  }
}

std::string format_dataset(std::span<const Sample> data) {
  std::string out(kHeader);
  out.push_back('\n');
  for (const auto& s : data) {
    out += text::format_real(s.dv);
    out += s.mp == 1 ? ",1," : ",0,";
    out.push_back(label_char(s.label));
    out.push_back('\n');
  }
  return out;
}

Dataset parse_dataset(std::string_view content) {
  const auto rows = text::lines(content);
  if (rows.empty() || rows.front() != kHeader) throw ParseError(1, "dataset header must be 'dv,mp,label'");
  Dataset data;
  data.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = text::split(rows[i], ',');
    if (fields.size() != 3) throw ParseError(line_no, "expected 'dv,mp,label'");
    const auto dv = text::parse_real(fields[0]);
    if (!dv) throw ParseError(line_no, "dv is not a finite decimal number");
    if (fields[1] != "0" && fields[1] != "1") throw ParseError(line_no, "mp must be 0 or 1");
    if (fields[2] != "S" && fields[2] != "T") throw ParseError(line_no, "label must be S or T");
    data.push_back(Sample{*dv, fields[1] == "1" ? 1 : 0, parse_label(fields[2])});
  }
  return data;
}

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset(text::read_file(path)); }

void save_dataset(const std::filesystem::path& path, std::span<const Sample> data) {
  text::write_file(path, format_dataset(data));
}

Split train_test_split(std::span<const Sample> data, double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidParameter("test fraction must lie in (0, 1)");
  }
  Dataset shuffled(data.begin(), data.end());
  fisher_yates(shuffled.begin(), shuffled.end(), rng);
  const auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(shuffled.size()) * test_fraction));
  Split split;
  split.test.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.train.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n_test), shuffled.end());
  return split;
}

}  // namespace routepred
