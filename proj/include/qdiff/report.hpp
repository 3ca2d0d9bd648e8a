#pragma once

#include <string>
#include <vector>

namespace qdiff {

// Pass/fail outcome of a verification run, one item per check with an
// optional witness string.
struct Report {
  struct Item {
    std::string name;
    bool pass = true;
    std::string witness;
  };

  std::string title;
  std::vector<Item> items;

  void add(const std::string& name, bool pass, const std::string& witness = "") {
    items.push_back({name, pass, witness});
  }
  bool pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  const Item* first_failure() const {
    for (const auto& i : items)
      if (!i.pass) return &i;
    return nullptr;
  }
  std::string text() const {
    std::string out = title.empty() ? "" : title + "\n";
    for (const auto& i : items) {
      out += std::string(i.pass ? "  pass  " : "  FAIL  ") + i.name;
      if (!i.witness.empty()) out += "  [" + i.witness + "]";
      out += "\n";
    }
    return out;
  }
};

}  // namespace qdiff
