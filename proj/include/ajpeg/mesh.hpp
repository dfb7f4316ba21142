#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

#include "ajpeg/error.hpp"

namespace ajpeg {

/// Axis-aligned pixel block, zero-based top-left corner. level counts the
/// bisections from the root, so cols == frame_cols >> level.
struct Element {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint8_t level = 0;

  [[nodiscard]] std::size_t area() const noexcept {
    return static_cast<std::size_t>(rows) * cols;
  }
  [[nodiscard]] bool contains(const Element& o) const noexcept {
    return o.row >= row && o.col >= col && o.row + o.rows <= row + rows &&
           o.col + o.cols <= col + cols;
  }
  [[nodiscard]] bool refinable() const noexcept { return std::min(rows, cols) >= 16; }

  friend bool operator==(const Element&, const Element&) = default;
};

/// Lexicographic order of top-left pixels: row first, then column.
inline bool lex_less(const Element& a, const Element& b) noexcept {
  return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

/// Four congruent children by bisecting both sides, in lexicographic order.
inline std::array<Element, 4> refine_element(const Element& e) {
  if (e.rows % 2 != 0 || e.cols % 2 != 0 || e.rows < 2 || e.cols < 2)
    throw InvalidArgument("refine_element: element has an odd side");
  const std::uint32_t h = e.rows / 2;
  const std::uint32_t w = e.cols / 2;
  const auto lvl = static_cast<std::uint8_t>(e.level + 1);
  return {Element{e.row, e.col, h, w, lvl}, Element{e.row, e.col + w, h, w, lvl},
          Element{e.row + h, e.col, h, w, lvl}, Element{e.row + h, e.col + w, h, w, lvl}};
}

struct MeshNode {
  Element element;
  std::int32_t parent = -1;
  std::int32_t first_child = -1; // children occupy first_child .. first_child + 3
  double eta = 0.0;
  double eta_tilde = 0.0;

  [[nodiscard]] bool is_leaf() const noexcept { return first_child < 0; }
};

/// Quadtree rooted at the whole channel; its leaves form the mesh.
class MeshTree {
public:
  MeshTree() = default;
  MeshTree(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("MeshTree: empty frame");
    nodes_.push_back(MeshNode{Element{0, 0, static_cast<std::uint32_t>(rows),
                                      static_cast<std::uint32_t>(cols), 0}});
    leaf_count_ = 1;
  }

  [[nodiscard]] std::size_t frame_rows() const noexcept { return nodes_.front().element.rows; }
  [[nodiscard]] std::size_t frame_cols() const noexcept { return nodes_.front().element.cols; }
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] std::size_t leaf_count() const noexcept { return leaf_count_; }

  MeshNode& node(std::int32_t id) noexcept { return nodes_[static_cast<std::size_t>(id)]; }
  const MeshNode& node(std::int32_t id) const noexcept {
    return nodes_[static_cast<std::size_t>(id)];
  }

  /// Splits a leaf; returns the id of its first child.
  std::int32_t refine(std::int32_t id) {
    if (!node(id).is_leaf()) throw InvalidArgument("MeshTree::refine: node is not a leaf");
    const auto children = refine_element(node(id).element);
    const auto first = static_cast<std::int32_t>(nodes_.size());
    for (const Element& c : children) nodes_.push_back(MeshNode{c, id});
    node(id).first_child = first;
    leaf_count_ += 3;
    return first;
  }

  /// Leaf ids in lexicographic order of their top-left pixels.
  [[nodiscard]] std::vector<std::int32_t> leaf_ids() const {
    std::vector<std::int32_t> out;
    out.reserve(leaf_count_);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].is_leaf()) out.push_back(static_cast<std::int32_t>(i));
    std::sort(out.begin(), out.end(), [&](std::int32_t a, std::int32_t b) {
      return lex_less(node(a).element, node(b).element);
    });
    return out;
  }

private:
  std::vector<MeshNode> nodes_;
  std::size_t leaf_count_ = 0;
};

/// Mesh elements ascending by top-left pixel.
inline std::vector<Element> order_elements(const MeshTree& tree) {
  std::vector<Element> out;
  for (std::int32_t id : tree.leaf_ids()) out.push_back(tree.node(id).element);
  return out;
}

inline std::vector<Element> order_elements(std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end(), lex_less);
  return elems;
}

/// Mesh refined everywhere down to the 8-pixel floor (the standard JPEG grid
/// for square frames).
inline MeshTree uniform_mesh(std::size_t rows, std::size_t cols) {
  MeshTree tree(rows, cols);
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(tree.node_count()); ++id)
    if (tree.node(id).element.refinable()) tree.refine(id);
  return tree;
}

} // namespace ajpeg
