#include "fidelium/names.hpp"

#include <algorithm>
#include <cctype>

namespace fidelium {

int Hf::rank() const {
  int r = 0;
  for (const Hf& e : elems) r = std::max(r, e.rank() + 1);
  return r;
}

bool Hf::member(const Hf& x) const {
  for (const Hf& e : elems)
    if (e == x) return true;
  return false;
}

std::string Hf::to_text() const {
  std::string out = "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += elems[i].to_text();
  }
  return out + "}";
}

bool operator==(const Hf& a, const Hf& b) { return a.elems == b.elems; }

bool operator<(const Hf& a, const Hf& b) {
  return std::lexicographical_compare(a.elems.begin(), a.elems.end(), b.elems.begin(),
                                      b.elems.end());
}

Hf hf_canonical(Hf s) {
  for (Hf& e : s.elems) e = hf_canonical(std::move(e));
  std::sort(s.elems.begin(), s.elems.end());
  s.elems.erase(std::unique(s.elems.begin(), s.elems.end()), s.elems.end());
  return s;
}

Hf hf_successor(Hf s) {
  Hf out = s;
  out.elems.push_back(std::move(s));
  return hf_canonical(std::move(out));
}

Hf hf_numeral(int n) {
  Hf cur;
  for (int i = 0; i < n; ++i) cur = hf_successor(std::move(cur));
  return cur;
}

std::vector<Hf> enumerate_hf(int max_rank) {
  if (max_rank < 0) return {};
  if (max_rank > 4)
    fail(ErrorCode::size_cap_exceeded, "hereditarily finite enumeration is capped at rank 4");
  std::vector<Hf> level = {Hf{}};
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<Hf> next;
    const size_t m = level.size();  // at most 16 when r <= 4
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      Hf s;
      for (size_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.elems.push_back(level[i]);
      next.push_back(hf_canonical(std::move(s)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return level;
}

std::optional<Elem> Name::weight_of(NameId x) const {
  for (const auto& [id, w] : graph)
    if (id == x) return w;
  return std::nullopt;
}

UniverseFragment::UniverseFragment(AlgebraHandle algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) fail(ErrorCode::io_error, "universe fragment needs an algebra");
}

const Name& UniverseFragment::name(NameId id) const {
  if (id < 0 || id >= size()) fail(ErrorCode::unknown_element, "unknown name id");
  return names_[id];
}

std::vector<NameId> UniverseFragment::all_ids() const {
  std::vector<NameId> ids(names_.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<NameId>(i);
  return ids;
}

NameId UniverseFragment::make_name(std::vector<std::pair<NameId, Elem>> entries) {
  const HeytingStructure& h = heyting();
  for (auto& [id, w] : entries) {
    if (id < 0 || id >= size()) fail(ErrorCode::unknown_element, "unknown name id in graph");
    if (w < 0 || w >= h.size()) fail(ErrorCode::unknown_element, "weight outside the carrier");
  }
  std::sort(entries.begin(), entries.end());
  size_t out = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (out > 0 && entries[out - 1].first == entries[i].first)
      entries[out - 1].second = h.join(entries[out - 1].second, entries[i].second);
    else
      entries[out++] = entries[i];
  }
  entries.resize(out);

  auto it = interned_.find(entries);
  if (it != interned_.end()) return it->second;

  Name n;
  n.rank = 0;
  for (const auto& [id, w] : entries) n.rank = std::max(n.rank, names_[id].rank + 1);
  n.graph = entries;
  NameId id = static_cast<NameId>(names_.size());
  names_.push_back(std::move(n));
  interned_.emplace(std::move(entries), id);
  return id;
}

NameId UniverseFragment::hat_embed(const Hf& s) {
  std::vector<std::pair<NameId, Elem>> entries;
  for (const Hf& e : s.elems) entries.emplace_back(hat_embed(e), heyting().top());
  return make_name(std::move(entries));
}

void UniverseFragment::bind(const std::string& label, NameId id) {
  if (id < 0 || id >= size()) fail(ErrorCode::unknown_element, "unknown name id");
  for (auto& [l, old] : labels_) {
    if (l == label) {
      old = id;
      return;
    }
  }
  labels_.emplace_back(label, id);
}

std::optional<NameId> UniverseFragment::lookup(const std::string& label) const {
  for (const auto& [l, id] : labels_)
    if (l == label) return id;
  return std::nullopt;
}

std::string UniverseFragment::label_of(NameId id) const {
  for (const auto& [l, i] : labels_)
    if (i == id) return l;
  return "#" + std::to_string(id);
}

std::string UniverseFragment::describe(NameId id) const {
  const Name& n = name(id);
  std::string out = "{";
  for (size_t i = 0; i < n.graph.size(); ++i) {
    if (i) out += ", ";
    const auto& [d, w] = n.graph[i];
    bool bound = false;
    for (const auto& [l, b] : labels_)
      if (b == d) bound = true;
    out += "(" + (bound ? label_of(d) : describe(d)) + ", " + heyting().name(w) + ")";
  }
  return out + "}";
}

namespace {

// sum over k <= max_dom of C(m, k) * asize^k, saturating just above cap
std::uint64_t universe_level_count(std::uint64_t m, std::uint64_t max_dom, std::uint64_t asize,
                                   std::uint64_t cap) {
  const std::uint64_t lim = cap + 1;
  __uint128_t total = 0;
  __uint128_t term = 1;  // C(m, k) * asize^k
  for (std::uint64_t k = 0;; ++k) {
    total += term;
    if (total > lim) return lim;
    if (k == std::min(m, max_dom)) break;
    term = term * (m - k) / (k + 1) * asize;
    if (term > lim) term = lim;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

std::vector<NameId> UniverseFragment::enumerate_names(int max_rank,
                                                      std::optional<int> max_dom_size,
                                                      std::uint64_t budget) {
  if (max_rank < 0) fail(ErrorCode::size_cap_exceeded, "negative rank");
  if (max_rank > 2) fail(ErrorCode::size_cap_exceeded, "name enumeration is capped at rank 2");
  const std::uint64_t asize = static_cast<std::uint64_t>(heyting().size());
  const std::uint64_t dom_cap =
      max_dom_size ? static_cast<std::uint64_t>(std::max(0, *max_dom_size)) : ~0ull;

  // The universe of rank <= r is the set of weighted maps over the universe of
  // rank <= r-1, so its cardinality follows from the previous level's alone.
  std::uint64_t count = 1;
  for (int r = 1; r <= max_rank; ++r) {
    count = universe_level_count(count, dom_cap, asize, budget);
    if (count > budget)
      fail(ErrorCode::budget_exceeded,
           "universe of rank <= " + std::to_string(max_rank) + " exceeds the budget of " +
               std::to_string(budget) + " names");
  }

  std::vector<NameId> level = {empty_name()};
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<NameId> next;
    std::vector<std::pair<NameId, Elem>> entries;
    // every subset of the previous level of size <= dom_cap, every weighting
    auto rec = [&](auto&& self, size_t from) -> void {
      if (entries.size() == std::min<std::uint64_t>(level.size(), dom_cap) || from == level.size()) {
        next.push_back(make_name(entries));
        return;
      }
      self(self, from + 1);
      for (Elem w = 0; w < heyting().size(); ++w) {
        entries.emplace_back(level[from], w);
        if (entries.size() <= dom_cap) self(self, from + 1);
        entries.pop_back();
      }
    };
    rec(rec, 0);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return level;
}

namespace {

struct NameParser {
  const std::string& text;
  UniverseFragment& frag;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      fail(ErrorCode::syntax_error,
           std::string("expected '") + c + "' at offset " + std::to_string(pos));
  }

  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') ++pos;
      else break;
    }
    if (pos == start)
      fail(ErrorCode::syntax_error, "expected an identifier at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }

  Hf hf() {
    expect('{');
    Hf s;
    skip();
    if (eat('}')) return s;
    while (true) {
      s.elems.push_back(hf());
      if (eat('}')) break;
      expect(',');
    }
    return hf_canonical(std::move(s));
  }

  NameId expr() {
    skip();
    if (pos < text.size() && text[pos] == '{') {
      ++pos;
      std::vector<std::pair<NameId, Elem>> entries;
      skip();
      if (eat('}')) return frag.make_name({});
      while (true) {
        expect('(');
        NameId d = expr();
        expect(',');
        std::string en = ident();
        Elem w = frag.heyting().elem(en);
        expect(')');
        entries.emplace_back(d, w);
        if (eat('}')) break;
        expect(',');
      }
      return frag.make_name(std::move(entries));
    }
    std::string id = ident();
    if (id == "hat") return frag.hat_embed(hf());
    if (auto bound = frag.lookup(id)) return *bound;
    fail(ErrorCode::unbound_name, "no name bound to '" + id + "'");
  }
};

}  // namespace

NameId parse_name_expr(UniverseFragment& frag, const std::string& text) {
  NameParser p{text, frag};
  NameId id = p.expr();
  p.skip();
  if (p.pos != text.size())
    fail(ErrorCode::syntax_error, "trailing input after name expression: '" + text.substr(p.pos) + "'");
  return id;
}

}  // namespace fidelium
