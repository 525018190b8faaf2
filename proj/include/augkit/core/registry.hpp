#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "augkit/core/rng.hpp"
#include "augkit/core/value.hpp"
#include "augkit/errors.hpp"

namespace augkit {

// One catalog transform for a given datum type.
//
// resolve() turns "random" parameter markers and position-style draws into
// concrete values; it runs once per application so video per-frame delegates
// can reuse the same resolved params across frames. apply() may still draw
// from its rng for field-style randomness (noise samples), which is redrawn
// per frame by design.
template <class Datum>
struct CatalogEntry {
  std::string name;
  ParamSchema schema;
  std::function<Params(const Params&, Rng&)> resolve;  // nullable
  std::function<Datum(const Datum&, const Params&, Rng&)> apply;
  std::function<double(const Params&)> intensity;      // nullable -> 100
};

template <class Datum>
class Registry {
 public:
  static Registry& instance() {
    static Registry reg;
    return reg;
  }

  void add(CatalogEntry<Datum> entry) {
    if (index_.count(entry.name))
      throw Error("catalog already contains '" + entry.name + "'");
    index_[entry.name] = entries_.size();
    entries_.push_back(std::move(entry));
  }

  const CatalogEntry<Datum>* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const CatalogEntry<Datum>& at(const std::string& name) const {
    const CatalogEntry<Datum>* e = find(name);
    if (!e) throw CatalogError("unknown transform '" + name + "'");
    return *e;
  }

  // Registration order, which is the documented catalog order.
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<CatalogEntry<Datum>> entries_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace augkit
