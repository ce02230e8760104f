#include "maf/newick.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>

namespace maf {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  ParsedTree run() {
    skip();
    if (at_end()) throw NewickError("empty Newick string");
    ParsedTree out;
    out.root = subtree(out);
    skip();
    if (peek() == ':') length();
    skip();
    if (peek() != ';') fail("expected ';'");
    ++pos_;
    skip();
    if (!at_end()) fail("trailing characters after ';'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw NewickError(what + " at offset " + std::to_string(pos_));
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '[') {
        auto close = s_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  std::string label() {
    skip();
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      for (;;) {
        if (at_end()) fail("unterminated quoted label");
        char c = s_[pos_++];
        if (c == '\'') {
          if (peek() != '\'') break;
          ++pos_;
        }
        out += c;
      }
      return out;
    }
    while (!at_end()) {
      char c = s_[pos_];
      if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' ||
          std::isspace(static_cast<unsigned char>(c)))
        break;
      out += c;
      ++pos_;
    }
    return out;
  }

  void length() {
    ++pos_;
    skip();
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                         peek() == '-' || peek() == '+'))
      ++pos_;
    if (start == pos_) fail("missing branch length");
  }

  int subtree(ParsedTree& out) {
    skip();
    const int id = static_cast<int>(out.children.size());
    out.children.emplace_back();
    out.label.emplace_back();
    if (peek() == '(') {
      ++pos_;
      for (;;) {
        int c = subtree(out);
        out.children[static_cast<std::size_t>(id)].push_back(c);
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail(at_end() ? "unbalanced parentheses" : "expected ',' or ')'");
      }
      label();  // internal labels are ignored
    } else {
      if (peek() == ')' ) fail("unbalanced parentheses");
      auto l = label();
      if (l.empty()) fail("empty leaf label");
      out.label[static_cast<std::size_t>(id)] = std::move(l);
    }
    skip();
    if (peek() == ':') length();
    return id;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> ParsedTree::leaf_labels() const {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < children.size(); ++v)
    if (children[v].empty()) out.push_back(label[v]);
  return out;
}

ParsedTree parse_newick_raw(std::string_view text) {
  auto parsed = Reader(text).run();
  std::set<std::string> seen;
  for (const auto& l : parsed.leaf_labels())
    if (!seen.insert(l).second) throw NewickError("duplicate label '" + l + "'");
  return parsed;
}

PhyloTree to_tree(const ParsedTree& parsed, TreeKind kind, const TaxonTable& table) {
  std::vector<PhyloTree::RawNode> sketch(parsed.children.size());
  for (std::size_t v = 0; v < parsed.children.size(); ++v) {
    const auto& ch = parsed.children[v];
    sketch[v].children = ch;
    if (ch.empty()) {
      sketch[v].taxon = TaxonSet::single(table.index(parsed.label[v]));
      continue;
    }
    const bool is_root = static_cast<int>(v) == parsed.root;
    const std::size_t max_arity = (is_root && kind == TreeKind::unrooted) ? 3 : 2;
    if (ch.size() == 1) throw NewickError("unary internal node");
    if (ch.size() > max_arity) throw NewickError("multifurcation: node with " + std::to_string(ch.size()) + " children");
  }
  try {
    return PhyloTree::from_sketch(kind, sketch, parsed.root);
  } catch (const TreeError& e) {
    throw NewickError(e.what());
  }
}

PhyloTree parse_newick(std::string_view text, TreeKind kind, TaxonTable& table) {
  auto parsed = parse_newick_raw(text);
  table = TaxonTable::from_labels(parsed.leaf_labels());
  return to_tree(parsed, kind, table);
}

std::vector<std::string> read_newick_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

namespace {

std::string leaf_text(const TaxonSet& taxon, const TaxonTable& table) {
  std::string out;
  for (const auto& l : table.labels(taxon)) {
    if (!out.empty()) out += '+';
    out += l;
  }
  return out;
}

}  // namespace

std::string write_newick(const PhyloTree& t, const TaxonTable& table) {
  if (t.empty()) return ";";
  std::function<std::string(int)> rec = [&](int v) -> std::string {
    if (t.is_leaf(v)) return leaf_text(t.node(v).taxon, table);
    auto [c0, c1] = t.node(v).child;
    if (t.cluster(c1) < t.cluster(c0)) std::swap(c0, c1);
    return "(" + rec(c0) + "," + rec(c1) + ")";
  };
  if (t.rooted() || t.node_count() == 1) return rec(t.root()) + ";";
  const int u = t.node(0).child[0];
  std::string head = "(" + leaf_text(t.node(0).taxon, table);
  if (t.is_leaf(u)) return head + "," + rec(u) + ");";
  auto [c0, c1] = t.node(u).child;
  if (t.cluster(c1) < t.cluster(c0)) std::swap(c0, c1);
  return head + "," + rec(c0) + "," + rec(c1) + ");";
}

}  // namespace maf
