#include "scg/element.hpp"

#include <cmath>

#include "scg/error.hpp"

namespace scg {

namespace {

Block zero_block(const ConeDescriptor& leaf) {
  Block b;
  b.kind = leaf.kind();
  if (leaf.kind() == ConeKind::sym) {
    b.data = Eigen::MatrixXd::Zero(leaf.n(), leaf.n());
  } else {
    b.data = Eigen::MatrixXd::Zero(leaf.n(), 1);
  }
  return b;
}

void check_same(const Element& a, const Element& b, const char* what) {
  if (!(a.descriptor() == b.descriptor())) {
    throw Error(ErrorCode::descriptor_mismatch, std::string(what) + ": descriptor mismatch (" +
                                                    a.descriptor().to_string() + " vs " +
                                                    b.descriptor().to_string() + ")");
  }
}

}  // namespace

Element::Element() : Element(ConeDescriptor::orthant(1)) {}

Element::Element(ConeDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  auto leaves = descriptor_.leaves();
  blocks_.reserve(leaves.size());
  for (const auto& leaf : leaves) blocks_.push_back(zero_block(leaf));
}

Element Element::orthant(const Eigen::VectorXd& values) {
  Element e(ConeDescriptor::orthant(static_cast<std::size_t>(values.size())));
  e.blocks_[0].data = values;
  return e;
}

Element Element::orthant(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return orthant(v);
}

Element Element::spin(double s, const Eigen::VectorXd& bar) {
  if (bar.size() == 0) throw Error(ErrorCode::invalid_argument, "spin element needs a vector part");
  Element e(ConeDescriptor::spin(static_cast<std::size_t>(bar.size()) + 1));
  e.blocks_[0].data(0, 0) = s;
  e.blocks_[0].data.col(0).tail(bar.size()) = bar;
  return e;
}

Element Element::spin(double s, std::initializer_list<double> bar) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(bar.size()));
  Eigen::Index i = 0;
  for (double x : bar) v(i++) = x;
  return spin(s, v);
}

Element Element::sym(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw Error(ErrorCode::dimension_mismatch, "sym element needs a non-empty square matrix");
  }
  Element e(ConeDescriptor::sym(static_cast<std::size_t>(matrix.rows())));
  e.blocks_[0].data = 0.5 * (matrix + matrix.transpose());
  return e;
}

Element Element::product(const std::vector<Element>& components) {
  std::vector<ConeDescriptor> descs;
  descs.reserve(components.size());
  for (const auto& c : components) descs.push_back(c.descriptor());
  Element e(ConeDescriptor::product(std::move(descs)));
  std::size_t k = 0;
  for (const auto& c : components) {
    for (const auto& b : c.blocks()) e.blocks_[k++] = b;
  }
  return e;
}

Element Element::from_coordinates(const ConeDescriptor& descriptor, const Eigen::VectorXd& coords) {
  if (static_cast<std::size_t>(coords.size()) != descriptor.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "expected " + std::to_string(descriptor.ambient_dim()) + " coordinates for " +
                    descriptor.to_string() + ", got " + std::to_string(coords.size()));
  }
  Element e(descriptor);
  Eigen::Index pos = 0;
  for (auto& b : e.blocks_) {
    const auto n = b.data.rows();
    if (b.kind == ConeKind::sym) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
          b.data(i, j) = coords(pos);
          b.data(j, i) = coords(pos);
          ++pos;
        }
      }
    } else {
      b.data.col(0) = coords.segment(pos, n);
      pos += n;
    }
  }
  return e;
}

Element Element::component(std::size_t i) const {
  if (!descriptor_.is_product()) {
    if (i != 0) throw Error(ErrorCode::invalid_argument, "simple element has one component");
    return *this;
  }
  const auto& comp_desc = descriptor_.components().at(i);
  Element out(comp_desc);
  const std::size_t offset = descriptor_.leaf_offset(i);
  for (std::size_t k = 0; k < out.blocks_.size(); ++k) out.blocks_[k] = blocks_[offset + k];
  return out;
}

void Element::set_component(std::size_t i, const Element& value) {
  if (!descriptor_.is_product()) {
    if (i != 0) throw Error(ErrorCode::invalid_argument, "simple element has one component");
    check_same(*this, value, "set_component");
    *this = value;
    return;
  }
  if (!(descriptor_.components().at(i) == value.descriptor())) {
    throw Error(ErrorCode::descriptor_mismatch, "set_component: descriptor mismatch");
  }
  const std::size_t offset = descriptor_.leaf_offset(i);
  for (std::size_t k = 0; k < value.blocks_.size(); ++k) blocks_[offset + k] = value.blocks_[k];
}

const Eigen::MatrixXd& Element::data() const {
  if (descriptor_.is_product()) {
    throw Error(ErrorCode::invalid_argument, "data() is only defined for simple elements");
  }
  return blocks_[0].data;
}

Eigen::VectorXd Element::coordinates() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(descriptor_.ambient_dim()));
  Eigen::Index pos = 0;
  for (const auto& b : blocks_) {
    const auto n = b.data.rows();
    if (b.kind == ConeKind::sym) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) out(pos++) = b.data(i, j);
      }
    } else {
      out.segment(pos, n) = b.data.col(0);
      pos += n;
    }
  }
  return out;
}

bool Element::all_finite() const {
  for (const auto& b : blocks_) {
    if (!b.data.allFinite()) return false;
  }
  return true;
}

Element& Element::operator+=(const Element& other) {
  check_same(*this, other, "operator+");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k].data += other.blocks_[k].data;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  check_same(*this, other, "operator-");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k].data -= other.blocks_[k].data;
  return *this;
}

Element& Element::operator*=(double scale) {
  for (auto& b : blocks_) b.data *= scale;
  return *this;
}

void require_same_descriptor(const Element& a, const Element& b, const char* what) {
  check_same(a, b, what);
}

Element identity(const ConeDescriptor& descriptor) {
  Element e(descriptor);
  for (auto& b : e.blocks()) {
    switch (b.kind) {
      case ConeKind::orthant: b.data.setOnes(); break;
      case ConeKind::spin: b.data(0, 0) = 1.0; break;
      case ConeKind::sym: b.data.setIdentity(); break;
      case ConeKind::product: break;
    }
  }
  return e;
}

Element jordan_product(const Element& x, const Element& y) {
  check_same(x, y, "jordan_product");
  Element out(x.descriptor());
  for (std::size_t k = 0; k < out.blocks().size(); ++k) {
    const auto& a = x.block(k).data;
    const auto& b = y.block(k).data;
    auto& r = out.block(k).data;
    switch (out.block(k).kind) {
      case ConeKind::orthant:
        r = a.cwiseProduct(b);
        break;
      case ConeKind::spin: {
        const auto m = a.rows() - 1;
        r(0, 0) = a.col(0).dot(b.col(0));
        r.col(0).tail(m) = a(0, 0) * b.col(0).tail(m) + b(0, 0) * a.col(0).tail(m);
        break;
      }
      case ConeKind::sym: {
        Eigen::MatrixXd ab = a * b;
        r = 0.5 * (ab + ab.transpose());
        break;
      }
      case ConeKind::product: break;
    }
  }
  return out;
}

double trace(const Element& x) {
  double t = 0.0;
  for (const auto& b : x.blocks()) {
    switch (b.kind) {
      case ConeKind::orthant: t += b.data.sum(); break;
      case ConeKind::spin: t += 2.0 * b.data(0, 0); break;
      case ConeKind::sym: t += b.data.trace(); break;
      case ConeKind::product: break;
    }
  }
  return t;
}

double inner(const Element& x, const Element& y) {
  check_same(x, y, "inner");
  double s = 0.0;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    const double dot = x.block(k).data.cwiseProduct(y.block(k).data).sum();
    s += x.block(k).kind == ConeKind::spin ? 2.0 * dot : dot;
  }
  return s;
}

double norm(const Element& x) { return std::sqrt(inner(x, x)); }

Eigen::VectorXd coordinate_metric(const ConeDescriptor& descriptor) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(descriptor.ambient_dim()));
  Eigen::Index pos = 0;
  for (const auto& leaf : descriptor.leaves()) {
    const auto n = static_cast<Eigen::Index>(leaf.n());
    switch (leaf.kind()) {
      case ConeKind::orthant:
        g.segment(pos, n).setOnes();
        pos += n;
        break;
      case ConeKind::spin:
        g.segment(pos, n).setConstant(2.0);
        pos += n;
        break;
      case ConeKind::sym:
        for (Eigen::Index i = 0; i < n; ++i) {
          for (Eigen::Index j = i; j < n; ++j) g(pos++) = (i == j) ? 1.0 : 2.0;
        }
        break;
      case ConeKind::product: break;
    }
  }
  return g;
}

double max_abs_difference(const Element& a, const Element& b) {
  check_same(a, b, "max_abs_difference");
  double m = 0.0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    m = std::max(m, (a.block(k).data - b.block(k).data).cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace scg
