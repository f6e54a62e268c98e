#include "scg/cone.hpp"

#include <cctype>
#include <sstream>

#include "scg/error.hpp"

namespace scg {

struct ConeDescriptor::Node {
  ConeKind kind = ConeKind::orthant;
  std::size_t n = 1;
  std::vector<ConeDescriptor> components;
  std::vector<ConeDescriptor> leaves;
  std::vector<std::size_t> leaf_offsets;
  std::size_t rank = 1;
  std::size_t ambient_dim = 1;
};

namespace {

std::shared_ptr<ConeDescriptor::Node> make_simple(ConeKind kind, std::size_t n) {
  auto node = std::make_shared<ConeDescriptor::Node>();
  node->kind = kind;
  node->n = n;
  switch (kind) {
    case ConeKind::orthant:
      node->rank = n;
      node->ambient_dim = n;
      break;
    case ConeKind::spin:
      node->rank = 2;
      node->ambient_dim = n;
      break;
    case ConeKind::sym:
      node->rank = n;
      node->ambient_dim = n * (n + 1) / 2;
      break;
    case ConeKind::product:
      break;
  }
  return node;
}

}  // namespace

ConeDescriptor::ConeDescriptor() : ConeDescriptor(orthant(1)) {}

ConeDescriptor::ConeDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ConeDescriptor ConeDescriptor::orthant(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "orthant(n) requires n >= 1");
  auto node = make_simple(ConeKind::orthant, n);
  return ConeDescriptor(node);
}

ConeDescriptor ConeDescriptor::spin(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "spin(n) requires n >= 2");
  auto node = make_simple(ConeKind::spin, n);
  return ConeDescriptor(node);
}

ConeDescriptor ConeDescriptor::sym(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sym(n) requires n >= 1");
  auto node = make_simple(ConeKind::sym, n);
  return ConeDescriptor(node);
}

ConeDescriptor ConeDescriptor::product(std::vector<ConeDescriptor> components) {
  if (components.empty()) {
    throw Error(ErrorCode::invalid_argument, "product cone needs at least one component");
  }
  auto node = std::make_shared<Node>();
  node->kind = ConeKind::product;
  node->n = components.size();
  node->rank = 0;
  node->ambient_dim = 0;
  for (const auto& c : components) {
    node->rank += c.rank();
    node->ambient_dim += c.ambient_dim();
    node->leaf_offsets.push_back(node->leaves.size());
    auto sub = c.leaves();
    node->leaves.insert(node->leaves.end(), sub.begin(), sub.end());
  }
  node->components = std::move(components);
  return ConeDescriptor(node);
}

ConeKind ConeDescriptor::kind() const { return node_->kind; }
std::size_t ConeDescriptor::n() const { return node_->n; }
const std::vector<ConeDescriptor>& ConeDescriptor::components() const { return node_->components; }
std::size_t ConeDescriptor::rank() const { return node_->rank; }
std::size_t ConeDescriptor::ambient_dim() const { return node_->ambient_dim; }

std::span<const ConeDescriptor> ConeDescriptor::leaves() const {
  if (!is_product()) return {this, 1};
  return node_->leaves;
}

std::size_t ConeDescriptor::leaf_offset(std::size_t component) const {
  if (!is_product()) {
    if (component != 0) throw Error(ErrorCode::invalid_argument, "simple cone has one component");
    return 0;
  }
  if (component >= node_->leaf_offsets.size()) {
    throw Error(ErrorCode::invalid_argument, "component index out of range");
  }
  return node_->leaf_offsets[component];
}

std::string ConeDescriptor::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case ConeKind::orthant: os << "orthant(" << n() << ")"; break;
    case ConeKind::spin: os << "spin(" << n() << ")"; break;
    case ConeKind::sym: os << "sym(" << n() << ")"; break;
    case ConeKind::product: {
      os << "product[";
      for (std::size_t i = 0; i < components().size(); ++i) {
        if (i) os << ",";
        os << components()[i].to_string();
      }
      os << "]";
      break;
    }
  }
  return os.str();
}

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(const std::string& text) : text_(text) {}

  ConeDescriptor parse_all() {
    ConeDescriptor d = parse_one();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return d;
  }

 private:
  ConeDescriptor parse_one() {
    skip_ws();
    std::string word;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      word += text_[pos_++];
    }
    skip_ws();
    if (word == "product") {
      expect('[');
      std::vector<ConeDescriptor> parts;
      parts.push_back(parse_one());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        parts.push_back(parse_one());
        skip_ws();
      }
      expect(']');
      return ConeDescriptor::product(std::move(parts));
    }
    expect('(');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a size");
    std::size_t n = std::stoul(text_.substr(start, pos_ - start));
    skip_ws();
    expect(')');
    if (word == "orthant") return ConeDescriptor::orthant(n);
    if (word == "spin") return ConeDescriptor::spin(n);
    if (word == "sym") return ConeDescriptor::sym(n);
    fail("unknown cone '" + word + "'");
    return {};
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse,
                "cannot parse cone descriptor '" + text_ + "' at " + std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

ConeDescriptor ConeDescriptor::parse(const std::string& text) { return DescriptorParser(text).parse_all(); }

bool operator==(const ConeDescriptor& a, const ConeDescriptor& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.n() != b.n()) return false;
  if (a.kind() != ConeKind::product) return true;
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    if (!(a.components()[i] == b.components()[i])) return false;
  }
  return true;
}

}  // namespace scg
