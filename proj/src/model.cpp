#include "routepred/model.hpp"

#include <charconv>
#include <optional>
#include <vector>

#include "routepred/error.hpp"
#include "routepred/text.hpp"

namespace routepred {

namespace {

constexpr std::string_view kMagic = "routepred-model 1";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Line cursor over the model text with whitespace-separated tokens.
class Reader {
 public:
  explicit Reader(std::string_view content) : rows_(text::lines(content)) {}

  std::vector<std::string_view> next(std::string_view keyword, std::size_t n_fields) {
    if (at_ >= rows_.size()) throw ParseError(at_ + 1, "unexpected end of model file, expected '" + std::string(keyword) + "'");
    auto tokens = text::split(rows_[at_], ' ');
    ++at_;
    if (tokens.empty() || tokens[0] != keyword || tokens.size() != n_fields + 1) {
      throw ParseError(at_, "expected '" + std::string(keyword) + "' with " + std::to_string(n_fields) + " fields");
    }
    tokens.erase(tokens.begin());
    return tokens;
  }

  std::vector<std::string_view> raw(std::size_t n_fields) {
    if (at_ >= rows_.size()) throw ParseError(at_ + 1, "unexpected end of model file");
    auto tokens = text::split(rows_[at_], ' ');
    ++at_;
    if (tokens.size() != n_fields) throw ParseError(at_, "expected " + std::to_string(n_fields) + " fields");
    return tokens;
  }

  std::vector<std::string_view> any() {
    if (at_ >= rows_.size()) throw ParseError(at_ + 1, "unexpected end of model file");
    return text::split(rows_[at_++], ' ');
  }

  double real(std::string_view field) const {
    const auto v = text::parse_real(field);
    if (!v) throw ParseError(at_, "'" + std::string(field) + "' is not a finite real");
    return *v;
  }

  std::size_t count(std::string_view field) const {
    std::size_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
      throw ParseError(at_, "'" + std::string(field) + "' is not a non-negative integer");
    }
    return v;
  }

  Label label(std::string_view field) const {
    if (field != "S" && field != "T") throw ParseError(at_, "label must be S or T");
    return parse_label(field);
  }

  int mp(std::string_view field) const {
    if (field != "0" && field != "1") throw ParseError(at_, "mp must be 0 or 1");
    return field == "1" ? 1 : 0;
  }

  void finish() const {
    if (at_ != rows_.size()) throw ParseError(at_ + 1, "trailing content after model");
  }

  std::size_t line() const { return at_; }

 private:
  std::vector<std::string_view> rows_;
  std::size_t at_ = 0;
};

std::string serialize_nb_class(char name, const NbClassParams& p) {
  return std::string("class ") + name + " " + text::format_real(p.prior) + " " + text::format_real(p.mean) + " " +
         text::format_real(p.variance) + " " + text::format_real(p.p_mp) + "\n";
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Knn:
      return "knn";
    case Algorithm::NaiveBayes:
      return "nb";
    case Algorithm::DecisionTree:
      return "dt";
  }
  return "dt";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "knn") return Algorithm::Knn;
  if (name == "nb") return Algorithm::NaiveBayes;
  if (name == "dt") return Algorithm::DecisionTree;
  throw InvalidParameter("unknown algorithm '" + std::string(name) + "' (expected knn, nb or dt)");
}

TrainedModel TrainedModel::train(Algorithm algo, std::span<const Sample> data, const TrainOptions& opts) {
  switch (algo) {
    case Algorithm::Knn:
      return KnnModel::fit(data, opts.knn_k);
    case Algorithm::NaiveBayes:
      return NbModel::fit(data);
    case Algorithm::DecisionTree:
      return DtModel::fit(data, opts.max_depth);
  }
  throw InvalidParameter("unknown algorithm");
}

Algorithm TrainedModel::algorithm() const noexcept {
  return std::visit(Overloaded{[](const KnnModel&) { return Algorithm::Knn; },
                               [](const NbModel&) { return Algorithm::NaiveBayes; },
                               [](const DtModel&) { return Algorithm::DecisionTree; }},
                    model_);
}

Label TrainedModel::predict(double dv, int mp) const {
  return std::visit([&](const auto& m) { return m.predict(dv, mp); }, model_);
}

std::string TrainedModel::serialize() const {
  std::string out(kMagic);
  out += "\nalgorithm ";
  out += algorithm_name(algorithm());
  out.push_back('\n');
  std::visit(Overloaded{
                 [&](const KnnModel& m) {
                   out += "k " + std::to_string(m.k()) + "\n";
                   out += "samples " + std::to_string(m.samples().size()) + "\n";
                   for (const auto& s : m.samples()) {
                     out += text::format_real(s.dv) + (s.mp == 1 ? " 1 " : " 0 ") + label_char(s.label) + "\n";
                   }
                 },
                 [&](const NbModel& m) {
                   out += serialize_nb_class('S', m.params(Label::Straight));
                   out += serialize_nb_class('T', m.params(Label::Turn));
                 },
                 [&](const DtModel& m) {
                   out += "nodes " + std::to_string(m.nodes().size()) + "\n";
                   for (const auto& n : m.nodes()) {
                     const auto counts = std::to_string(n.counts[0]) + " " + std::to_string(n.counts[1]);
                     if (n.is_leaf) {
                       out += std::string("leaf ") + label_char(n.label) + " " + counts + "\n";
                     } else {
                       out += std::string("split ") + (n.feature == Feature::Dv ? "dv " : "mp ") +
                              text::format_real(n.threshold) + " " + std::to_string(n.left) + " " +
                              std::to_string(n.right) + " " + counts + "\n";
                     }
                   }
                 },
             },
             model_);
  return out;
}

TrainedModel TrainedModel::parse(std::string_view content) {
  Reader in(content);
  if (in.raw(2) != std::vector<std::string_view>{"routepred-model", "1"}) {
    throw ParseError(1, "not a routepred model file (expected '" + std::string(kMagic) + "')");
  }
  const auto algo_field = in.next("algorithm", 1)[0];
  Algorithm algo;
  try {
    algo = parse_algorithm(algo_field);
  } catch (const InvalidParameter& e) {
    throw ParseError(in.line(), e.what());
  }

  auto guard = [&](auto&& build) -> TrainedModel {
    try {
      return build();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(0, std::string("invalid model: ") + e.what());
    }
  };

  switch (algo) {
    case Algorithm::Knn: {
      const auto k = in.count(in.next("k", 1)[0]);
      const auto n = in.count(in.next("samples", 1)[0]);
      Dataset samples;
      samples.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto f = in.raw(3);
        samples.push_back(Sample{in.real(f[0]), in.mp(f[1]), in.label(f[2])});
      }
      in.finish();
      return guard([&] { return TrainedModel(KnnModel::fit(samples, static_cast<int>(k))); });
    }
    case Algorithm::NaiveBayes: {
      std::array<NbClassParams, kNumLabels> params{};
      for (const char name : {'S', 'T'}) {
        const auto f = in.next("class", 5);
        if (f[0].size() != 1 || f[0][0] != name) throw ParseError(in.line(), std::string("expected class ") + name);
        params[name == 'S' ? 0 : 1] = NbClassParams{in.real(f[1]), in.real(f[2]), in.real(f[3]), in.real(f[4])};
      }
      in.finish();
      return guard([&] { return TrainedModel(NbModel::from_params(params[0], params[1])); });
    }
    case Algorithm::DecisionTree: {
      const auto n = in.count(in.next("nodes", 1)[0]);
      if (n == 0 || n > (std::size_t{1} << 24)) throw ParseError(in.line(), "tree node count out of range");
      std::vector<DtNode> nodes;
      nodes.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto f = in.any();
        DtNode node;
        if (!f.empty() && f[0] == "leaf" && f.size() == 4) {
          node.is_leaf = true;
          node.label = in.label(f[1]);
          node.counts = {in.count(f[2]), in.count(f[3])};
        } else if (!f.empty() && f[0] == "split" && f.size() == 7) {
          if (f[1] != "dv" && f[1] != "mp") throw ParseError(in.line(), "split feature must be dv or mp");
          node.is_leaf = false;
          node.feature = f[1] == "dv" ? Feature::Dv : Feature::Mp;
          node.threshold = in.real(f[2]);
          node.left = in.count(f[3]);
          node.right = in.count(f[4]);
          node.counts = {in.count(f[5]), in.count(f[6])};
          node.label = majority(node.counts);
        } else {
          throw ParseError(in.line(), "expected 'leaf L nS nT' or 'split F threshold left right nS nT'");
        }
        nodes.push_back(node);
      }
      in.finish();
      return guard([&] { return TrainedModel(DtModel::from_nodes(std::move(nodes))); });
    }
  }
  throw ParseError(0, "unknown algorithm");
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) { return parse(text::read_file(path)); }

void TrainedModel::save(const std::filesystem::path& path) const { text::write_file(path, serialize()); }

}  // namespace routepred
