#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string_view>
#include <vector>

#include "ajpeg/error.hpp"
#include "ajpeg/estimator.hpp"
#include "ajpeg/image.hpp"
#include "ajpeg/mesh.hpp"
#include "ajpeg/transform.hpp"

namespace ajpeg {

/// Max-heap of leaves keyed on the modified error. Holds exactly the current
/// leaves of the tree it serves.
class LeafQueue {
public:
  struct Entry {
    double eta_tilde;
    std::int32_t id;
  };

  void push(std::int32_t id, double eta_tilde) { heap_.push(Entry{eta_tilde, id}); }
  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }

  [[nodiscard]] double max() const {
    if (heap_.empty()) throw InvalidArgument("LeafQueue: no leaves");
    return heap_.top().eta_tilde;
  }

  /// Removes and returns every entry whose key equals the maximum bit-exactly.
  std::vector<Entry> pop_max_set() {
    const double m = max();
    std::vector<Entry> out;
    while (!heap_.empty() && heap_.top().eta_tilde == m) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    return out;
  }

private:
  struct Less {
    bool operator()(const Entry& a, const Entry& b) const noexcept {
      if (a.eta_tilde != b.eta_tilde) return a.eta_tilde < b.eta_tilde;
      return a.id > b.id;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Less> heap_;
};

enum class Termination : std::uint8_t {
  Tolerance, ///< E(T) <= tau
  Floor,     ///< every leaf attaining max eta~ is below the 16-pixel refinement size
};

inline std::string_view to_string(Termination t) noexcept {
  return t == Termination::Tolerance ? "tolerance" : "floor";
}

/// Mesh plus quantized coefficients for one channel.
struct ChannelEncoding {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Element> leaves;    ///< lexicographic order
  std::vector<CoeffBlock> blocks; ///< parallel to leaves
  double error = 0.0;             ///< E(T) with the unquantized approximation
  double final_error = 0.0;       ///< E(T) after quantization
  std::size_t iterations = 0;
  Termination termination = Termination::Tolerance;
};

struct RefineOptions {
  /// Called once per mesh T_l (l = 0, 1, ...) with the current E(T_l).
  std::function<void(const MeshTree&, std::size_t iteration, double error)> observer;
};

namespace detail {

// Neumaier-compensated running sum; leaf contributions are added and removed
// as the mesh changes.
class RunningSum {
public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double contribution(double eta, NormKind k) noexcept { return k == NormKind::L2 ? eta * eta : eta; }

inline double to_global(double sum, NormKind k) noexcept {
  return k == NormKind::L2 ? std::sqrt(std::max(sum, 0.0)) : std::max(sum, 0.0);
}

inline MatrixView<double> element_view(const ChannelPlane& p, const Element& e) {
  return MatrixView<double>(p.values).sub(e.row, e.col, e.rows, e.cols);
}

inline double exact_global(const MeshTree& tree, NormKind k) {
  std::vector<double> etas;
  etas.reserve(tree.leaf_count());
  // Same summation order as quantize_mesh so both report identical values.
  for (std::int32_t id : tree.leaf_ids()) etas.push_back(tree.node(id).eta);
  return global_error(etas, k);
}

} // namespace detail

/// Quantizes every leaf of a mesh and measures the resulting errors.
inline ChannelEncoding quantize_mesh(const ChannelPlane& plane, const MeshTree& tree, NormKind kind,
                                     const QuantMatrix& q = kJpegQuant) {
  const ErrorNorm norm{kind, plane.rows(), plane.cols()};
  ChannelEncoding out;
  out.rows = plane.rows();
  out.cols = plane.cols();
  std::vector<double> unq;
  std::vector<double> fin;
  for (std::int32_t id : tree.leaf_ids()) {
    const Element& e = tree.node(id).element;
    const auto view = detail::element_view(plane, e);
    out.leaves.push_back(e);
    out.blocks.push_back(encode_block(view, q));
    unq.push_back(norm.element_error(view));
    fin.push_back(norm.local(view, decode_block(out.blocks.back(), e.rows, e.cols, q)));
  }
  out.error = global_error(unq, kind);
  out.final_error = global_error(fin, kind);
  return out;
}

/// Adaptive mesh construction for one channel: greedy marking on the
/// modified error until E(T) <= tau or only sub-16-pixel leaves attain the
/// maximum. The tree is returned through `tree_out` when non-null.
inline ChannelEncoding run_adaptive(const ChannelPlane& plane, double tau, NormKind kind,
                                    const RefineOptions& opts = {}, MeshTree* tree_out = nullptr,
                                    const QuantMatrix& q = kJpegQuant) {
  if (plane.rows() < kBlock || plane.cols() < kBlock)
    throw InvalidArgument("run_adaptive: channel smaller than 8x8");
  if (!is_pow2(plane.rows()) || !is_pow2(plane.cols()))
    throw InvalidArgument("run_adaptive: channel dimensions must be powers of two");
  if (!(tau >= 0.0)) throw InvalidArgument("run_adaptive: tolerance must be nonnegative");

  const ErrorNorm norm{kind, plane.rows(), plane.cols()};
  MeshTree tree(plane.rows(), plane.cols());
  LeafQueue queue;
  detail::RunningSum total;

  {
    MeshNode& root = tree.node(0);
    root.eta = norm.element_error(detail::element_view(plane, root.element));
    root.eta_tilde = root.eta;
    queue.push(0, root.eta_tilde);
    total.add(detail::contribution(root.eta, kind));
  }

  std::size_t iteration = 0;
  double error = detail::to_global(total.value(), kind);
  if (opts.observer) opts.observer(tree, iteration, error);
  Termination why = Termination::Tolerance;

  while (error > tau) {
    auto max_set = queue.pop_max_set();
    std::vector<std::int32_t> marked;
    for (const auto& entry : max_set) {
      if (tree.node(entry.id).element.refinable())
        marked.push_back(entry.id);
      else
        queue.push(entry.id, entry.eta_tilde);
    }
    if (marked.empty()) {
      why = Termination::Floor;
      break;
    }
    for (std::int32_t id : marked) {
      const std::int32_t first = tree.refine(id);
      std::array<double, 4> child_eta{};
      for (int k = 0; k < 4; ++k) {
        MeshNode& child = tree.node(first + k);
        child.eta = norm.element_error(detail::element_view(plane, child.element));
        child_eta[static_cast<std::size_t>(k)] = child.eta;
      }
      const MeshNode& parent = tree.node(id);
      const double shared = modified_error_children(parent.eta, parent.eta_tilde, child_eta);
      total.add(-detail::contribution(parent.eta, kind));
      for (int k = 0; k < 4; ++k) {
        MeshNode& child = tree.node(first + k);
        child.eta_tilde = shared;
        queue.push(first + k, shared);
        total.add(detail::contribution(child.eta, kind));
      }
    }
    ++iteration;
    error = detail::to_global(total.value(), kind);
    // The running sum only steers the loop; the stopping decision uses an exact resum.
    if (error <= tau) error = detail::exact_global(tree, kind);
    if (opts.observer) opts.observer(tree, iteration, error);
  }

  ChannelEncoding out = quantize_mesh(plane, tree, kind, q);
  out.iterations = iteration;
  out.termination = why;
  if (tree_out) *tree_out = std::move(tree);
  return out;
}

} // namespace ajpeg
