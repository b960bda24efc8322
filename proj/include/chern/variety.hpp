// Model varieties: finite products of projective spaces. The factor
// dimensions determine everything else (Chow ring, K-groups, filtration),
// so a model is just the tuple (n_1, ..., n_k); k = 0 is the base point.
#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chern {

// Exponent tuple: one entry per factor, always within 0..n_j for the owning
// variety once reduced.
using Expo = std::vector<int>;

inline int expo_total(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }

class ModelVariety {
 public:
  ModelVariety() = default;  // Spec of the base field
  explicit ModelVariety(std::vector<int> dims) : n_(std::move(dims)) {
    for (int d : n_)
      if (d < 0) throw std::invalid_argument("ModelVariety: factor dimension must be >= 0");
  }

  // "P2", "P2xP3xP1" (case-insensitive).
  static ModelVariety parse(const std::string& text) {
    std::vector<int> dims;
    size_t i = 0;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("bad variety spec '" + text + "': " + why);
    };
    if (text.empty()) fail("empty");
    while (i < text.size()) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      if (c != 'p') fail("expected 'P'");
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        fail("expected a dimension after 'P'");
      int d = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        d = d * 10 + (text[i] - '0');
        if (d > 64) fail("factor dimension too large");
        ++i;
      }
      dims.push_back(d);
      if (i < text.size()) {
        char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
        if (sep != 'x') fail("expected 'x' between factors");
        ++i;
        if (i >= text.size()) fail("trailing separator");
      }
    }
    return ModelVariety(dims);
  }

  int factors() const { return static_cast<int>(n_.size()); }
  int dim() const { return std::accumulate(n_.begin(), n_.end(), 0); }
  int factor_dim(int j) const { return n_.at(static_cast<size_t>(j)); }
  const std::vector<int>& factor_dims() const { return n_; }

  std::string name() const {
    if (n_.empty()) return "Spec k";
    std::ostringstream os;
    for (size_t j = 0; j < n_.size(); ++j) {
      if (j) os << "x";
      os << "P" << n_[j];
    }
    return os.str();
  }

  bool operator==(const ModelVariety& o) const { return n_ == o.n_; }
  bool operator!=(const ModelVariety& o) const { return n_ != o.n_; }

  Expo zero_expo() const { return Expo(n_.size(), 0); }
  Expo full_expo() const {
    Expo e(n_.begin(), n_.end());
    return e;
  }

  bool in_box(const Expo& e) const {
    if (e.size() != n_.size()) return false;
    for (size_t j = 0; j < n_.size(); ++j)
      if (e[j] < 0 || e[j] > n_[j]) return false;
    return true;
  }

  void require_expo(const Expo& e, const char* what) const {
    if (!in_box(e))
      throw std::invalid_argument(std::string(what) + ": exponent tuple out of range for " + name());
  }

  // All exponent tuples 0 <= e_j <= n_j, in lexicographic order.
  std::vector<Expo> box() const {
    std::vector<Expo> out;
    Expo e = zero_expo();
    out.push_back(e);
    while (true) {
      int j = factors() - 1;
      while (j >= 0 && e[static_cast<size_t>(j)] == n_[static_cast<size_t>(j)]) {
        e[static_cast<size_t>(j)] = 0;
        --j;
      }
      if (j < 0) break;
      ++e[static_cast<size_t>(j)];
      out.push_back(e);
    }
    if (factors() == 0) return {Expo{}};
    return out;
  }

  ModelVariety product(const ModelVariety& o) const {
    std::vector<int> dims = n_;
    dims.insert(dims.end(), o.n_.begin(), o.n_.end());
    return ModelVariety(dims);
  }

  bool operator<(const ModelVariety& o) const { return n_ < o.n_; }

 private:
  std::vector<int> n_;
};

// Every model with total dimension <= max_dim: all multisets of factor
// dimensions >= 1 (written in nonincreasing order), plus the point P0.
inline std::vector<ModelVariety> models_up_to_dim(int max_dim) {
  std::vector<ModelVariety> out;
  out.emplace_back(std::vector<int>{0});
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (!parts.empty()) out.emplace_back(parts);
    for (int next = std::min(remaining, max_part); next >= 1; --next) {
      parts.push_back(next);
      self(self, remaining - next, next);
      parts.pop_back();
    }
  };
  rec(rec, max_dim, max_dim);
  std::sort(out.begin(), out.end(),
            [](const ModelVariety& a, const ModelVariety& b) {
              if (a.dim() != b.dim()) return a.dim() < b.dim();
              return a.factor_dims() < b.factor_dims();
            });
  return out;
}

}  // namespace chern
