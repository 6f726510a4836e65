#include "selboost/model_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "selboost/errors.hpp"

namespace selboost {

namespace {

constexpr const char* kMagic = "selboost model v1";

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : text_(text) {}

  bool next(std::string* line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string::npos) {
      *line = text_.substr(pos_);
      pos_ = text_.size();
    } else {
      *line = text_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
    }
    return true;
  }

  std::string expect(const std::string& what) {
    std::string line;
    if (!next(&line)) throw data_error("model file truncated before " + what);
    return line;
  }

  std::size_t pos() const { return pos_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

// "key rest" split; throws when the key does not match.
std::string expect_field(const std::string& line, const std::string& key) {
  if (line.compare(0, key.size(), key) != 0 || line.size() <= key.size() ||
      line[key.size()] != ' ')
    throw data_error("malformed model line, expected '" + key + " ...': " + line);
  return line.substr(key.size() + 1);
}

long long parse_ll(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw data_error("malformed integer in model file: " + s);
  return v;
}

double parse_d(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw data_error("malformed number in model file: " + s);
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string serialize_model(const Ensemble& ensemble) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "objective " << to_string(ensemble.config.objective) << '\n';
  out << "num_classes " << ensemble.config.num_classes << '\n';
  for (const std::string& name : ensemble.class_names)
    out << "class " << name << '\n';
  out << "iterations " << ensemble.config.num_trees << '\n';
  out << "learning_rate " << fmt_double(ensemble.config.learning_rate) << '\n';
  out << "base_score";
  for (double b : ensemble.base_score) out << ' ' << fmt_double(b);
  out << '\n';
  out << "num_features " << ensemble.num_features() << '\n';
  for (int f = 0; f < ensemble.num_features(); ++f) {
    const FeatureBins& col = ensemble.columns[static_cast<std::size_t>(f)];
    const FeatureSlot& slot = ensemble.layout.feature_map[static_cast<std::size_t>(f)];
    out << "feature_name " << ensemble.feature_names[static_cast<std::size_t>(f)]
        << '\n';
    out << "feature_meta " << slot.bundle << ' ' << slot.offset << ' '
        << col.zero_bin << ' ' << col.num_bins() << '\n';
    out << "feature_edges";
    for (int t = 0; t < col.num_bins(); ++t)
      out << ' ' << fmt_double(col.upper_edges[t]);
    out << '\n';
  }
  out << "num_bundles " << ensemble.layout.num_bundles() << '\n';
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const Tree& tree = ensemble.trees[t];
    out << "tree " << t << " nodes " << tree.nodes.size() << '\n';
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf())
        out << "node leaf " << fmt_double(node.leaf_value) << '\n';
      else
        out << "node split " << node.split_bundle << ' ' << node.split_code
            << ' ' << node.left << ' ' << node.right << '\n';
    }
  }
  out << "end\n";
  std::string text = out.str();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "checksum %016" PRIx64 "\n", fnv1a64(text));
  text += buf;
  return text;
}

Ensemble parse_model(const std::string& text) {
  {
    const std::size_t nl = text.find('\n');
    const std::string first = text.substr(0, nl);
    if (first != kMagic)
      throw data_error("unsupported model version (expected '" +
                       std::string(kMagic) + "', found '" + first + "')");
  }

  // Verify the checksum over everything before its own line.
  const std::size_t mark = text.rfind("checksum ");
  if (mark == std::string::npos || mark == 0 || text[mark - 1] != '\n')
    throw data_error("model file has no checksum line");
  {
    const std::string body = text.substr(0, mark);
    const std::string tail = text.substr(mark);
    char expect[32];
    std::snprintf(expect, sizeof(expect), "checksum %016" PRIx64 "\n",
                  fnv1a64(body));
    if (tail != expect) throw data_error("model file checksum mismatch");
  }

  LineReader in(text);
  if (in.expect("header") != kMagic)
    throw data_error("unsupported model version (expected '" +
                     std::string(kMagic) + "')");

  Ensemble ens;
  ens.config.objective =
      objective_from_string(expect_field(in.expect("objective"), "objective"));
  ens.config.num_classes = static_cast<int>(
      parse_ll(expect_field(in.expect("num_classes"), "num_classes")));
  for (int c = 0; c < ens.config.num_classes; ++c)
    ens.class_names.push_back(expect_field(in.expect("class name"), "class"));
  ens.config.num_trees = static_cast<int>(
      parse_ll(expect_field(in.expect("iterations"), "iterations")));
  ens.config.learning_rate =
      parse_d(expect_field(in.expect("learning_rate"), "learning_rate"));
  for (const std::string& tok :
       split_ws(expect_field(in.expect("base_score"), "base_score")))
    ens.base_score.push_back(parse_d(tok));

  const int s = static_cast<int>(
      parse_ll(expect_field(in.expect("num_features"), "num_features")));
  ens.columns.resize(static_cast<std::size_t>(s));
  ens.layout.feature_map.resize(static_cast<std::size_t>(s));
  for (int f = 0; f < s; ++f) {
    ens.feature_names.push_back(
        expect_field(in.expect("feature_name"), "feature_name"));
    const std::vector<std::string> meta =
        split_ws(expect_field(in.expect("feature_meta"), "feature_meta"));
    if (meta.size() != 4) throw data_error("malformed feature_meta line");
    FeatureSlot& slot = ens.layout.feature_map[static_cast<std::size_t>(f)];
    slot.bundle = static_cast<int>(parse_ll(meta[0]));
    slot.offset = static_cast<int>(parse_ll(meta[1]));
    FeatureBins& col = ens.columns[static_cast<std::size_t>(f)];
    col.zero_bin = static_cast<int>(parse_ll(meta[2]));
    const int nb = static_cast<int>(parse_ll(meta[3]));
    const std::vector<std::string> edges =
        split_ws(expect_field(in.expect("feature_edges"), "feature_edges"));
    if (static_cast<int>(edges.size()) != nb)
      throw data_error("feature_edges count does not match feature_meta");
    col.upper_edges.resize(nb);
    for (int t = 0; t < nb; ++t) col.upper_edges[t] = parse_d(edges[static_cast<std::size_t>(t)]);
  }

  const int nb = static_cast<int>(
      parse_ll(expect_field(in.expect("num_bundles"), "num_bundles")));
  ens.layout.bundle_features.resize(static_cast<std::size_t>(nb));
  ens.layout.bundle_codes.assign(static_cast<std::size_t>(nb), 1);
  for (int f = 0; f < s; ++f) {
    const FeatureSlot& slot = ens.layout.feature_map[static_cast<std::size_t>(f)];
    if (slot.bundle < 0 || slot.bundle >= nb)
      throw data_error("feature bundle index out of range in model file");
    ens.layout.bundle_features[static_cast<std::size_t>(slot.bundle)].push_back(f);
    ens.layout.bundle_codes[static_cast<std::size_t>(slot.bundle)] +=
        ens.columns[static_cast<std::size_t>(f)].num_bins();
  }
  for (auto& members : ens.layout.bundle_features) {
    if (members.empty()) throw data_error("empty bundle in model file");
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      return ens.layout.feature_map[static_cast<std::size_t>(a)].offset <
             ens.layout.feature_map[static_cast<std::size_t>(b)].offset;
    });
  }

  const std::size_t expected_trees =
      static_cast<std::size_t>(ens.config.num_trees) *
      static_cast<std::size_t>(ens.config.trees_per_iteration());
  for (std::size_t t = 0; t < expected_trees; ++t) {
    const std::vector<std::string> head = split_ws(in.expect("tree header"));
    if (head.size() != 4 || head[0] != "tree" || head[2] != "nodes" ||
        parse_ll(head[1]) != static_cast<long long>(t))
      throw data_error("malformed tree header for tree " + std::to_string(t));
    const long long count = parse_ll(head[3]);
    Tree tree;
    for (long long i = 0; i < count; ++i) {
      const std::vector<std::string> parts = split_ws(in.expect("tree node"));
      TreeNode node;
      if (parts.size() == 3 && parts[0] == "node" && parts[1] == "leaf") {
        node.leaf_value = parse_d(parts[2]);
      } else if (parts.size() == 6 && parts[0] == "node" && parts[1] == "split") {
        node.split_bundle = static_cast<int>(parse_ll(parts[2]));
        node.split_code = static_cast<int>(parse_ll(parts[3]));
        node.left = static_cast<int>(parse_ll(parts[4]));
        node.right = static_cast<int>(parse_ll(parts[5]));
        if (node.left < 0 || node.left >= count || node.right < 0 ||
            node.right >= count)
          throw data_error("tree child index out of range in model file");
      } else {
        throw data_error("malformed node line in model file");
      }
      tree.nodes.push_back(node);
    }
    ens.trees.push_back(std::move(tree));
  }
  if (in.expect("end marker") != "end")
    throw data_error("model file missing end marker");
  return ens;
}

void save_model(const Ensemble& ensemble, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write model file: " + path);
  out << serialize_model(ensemble);
}

Ensemble load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace selboost
