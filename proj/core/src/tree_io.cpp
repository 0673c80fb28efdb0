#include "inctree/tree_io.hpp"

#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

namespace inctree {

namespace {

TreeError syntax(const std::string& msg) { return TreeError(TreeError::Code::Syntax, msg); }

bool read_uint(std::string_view& s, std::uint64_t& out) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
  s.remove_prefix(i);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{}) throw syntax("expected a non-negative integer near '" + std::string(s.substr(0, 16)) + "'");
  if (ptr != s.data() + s.size() && !(*ptr == ' ' || *ptr == '\t' || *ptr == '\r' || *ptr == ',')) {
    throw syntax("unexpected character '" + std::string(1, *ptr) + "' in tree line");
  }
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

}  // namespace

RootedTree parse_tree_line(std::string_view line) {
  std::uint64_t n = 0;
  if (!read_uint(line, n)) throw syntax("empty tree line");
  if (n == 0) throw TreeError(TreeError::Code::Empty, "tree must have at least one vertex");
  std::vector<Vertex> parents;
  parents.reserve(n);
  parents.push_back(kNoParent);
  std::uint64_t p = 0;
  while (read_uint(line, p)) {
    if (parents.size() == n) throw syntax("more parent entries than n - 1");
    if (p == 0 || p > n) {
      throw TreeError(TreeError::Code::OutOfRange,
                      "parent index " + std::to_string(p) + " outside 1.." + std::to_string(n));
    }
    parents.push_back(static_cast<Vertex>(p - 1));
  }
  if (parents.size() != n) {
    throw syntax("expected " + std::to_string(n - 1) + " parent entries, got " +
                 std::to_string(parents.size() - 1));
  }
  return RootedTree::from_parents(std::move(parents));
}

RootedTree relabel_bfs(const RootedTree& t) {
  std::vector<Vertex> order{t.root()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex c : t.children(order[head])) order.push_back(c);
  }
  std::vector<Vertex> label(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<Vertex>(i);
  std::vector<Vertex> parents(t.size(), kNoParent);
  std::vector<Slot> slots;
  if (t.has_slots()) slots.assign(t.size(), Slot::Left);
  for (std::size_t i = 1; i < order.size(); ++i) {
    parents[i] = label[t.parent(order[i])];
    if (t.has_slots()) slots[i] = t.slot(order[i]);
  }
  return RootedTree::from_parents(std::move(parents), std::move(slots));
}

std::string format_tree_line(const RootedTree& t) {
  if (t.root() != 0) return format_tree_line(relabel_bfs(t));
  std::string out = std::to_string(t.size());
  for (Vertex v = 1; v < t.size(); ++v) {
    out += ' ';
    out += std::to_string(t.parent(v) + 1);
  }
  return out;
}

RootedTree parse_tree_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw syntax(std::string("invalid tree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("parents") || !j["parents"].is_array()) {
    throw syntax("tree JSON needs a \"parents\" array");
  }
  const auto& arr = j["parents"];
  if (j.contains("n") && (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() != arr.size())) {
    throw syntax("tree JSON \"n\" does not match the parents array");
  }
  std::vector<Vertex> parents;
  parents.reserve(arr.size());
  for (const auto& e : arr) {
    if (e.is_null()) {
      parents.push_back(kNoParent);
    } else if (e.is_number_unsigned()) {
      auto v = e.get<std::uint64_t>();
      if (v >= arr.size()) {
        throw TreeError(TreeError::Code::OutOfRange, "parent index " + std::to_string(v) + " out of range");
      }
      parents.push_back(static_cast<Vertex>(v));
    } else {
      throw syntax("parent entries must be null or non-negative integers");
    }
  }
  std::vector<Slot> slots;
  if (j.contains("slots")) {
    const auto& sj = j["slots"];
    if (!sj.is_array() || sj.size() != arr.size()) throw syntax("\"slots\" must match \"parents\" in length");
    for (const auto& e : sj) {
      if (e.is_null()) {
        slots.push_back(Slot::Left);
      } else if (e == "L" || e == "l") {
        slots.push_back(Slot::Left);
      } else if (e == "R" || e == "r") {
        slots.push_back(Slot::Right);
      } else {
        throw syntax("slot entries must be \"L\", \"R\" or null");
      }
    }
  }
  return RootedTree::from_parents(std::move(parents), std::move(slots));
}

std::string format_tree_json(const RootedTree& t) {
  nlohmann::json j;
  j["n"] = t.size();
  auto parents = nlohmann::json::array();
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v == t.root()) {
      parents.push_back(nullptr);
    } else {
      parents.push_back(t.parent(v));
    }
  }
  j["parents"] = std::move(parents);
  if (t.has_slots()) {
    auto slots = nlohmann::json::array();
    for (Vertex v = 0; v < t.size(); ++v) {
      if (v == t.root()) {
        slots.push_back(nullptr);
      } else {
        slots.push_back(t.slot(v) == Slot::Left ? "L" : "R");
      }
    }
    j["slots"] = std::move(slots);
  }
  return j.dump();
}

RootedTree parse_tree(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  if (i < text.size() && text[i] == '{') return parse_tree_json(text);
  return parse_tree_line(text);
}

}  // namespace inctree
