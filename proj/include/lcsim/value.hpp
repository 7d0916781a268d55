#pragma once

// Label values: immutable, totally ordered, structurally shared.
//
// A label is an integer, a symbol, a tuple of labels, or a set of labels.
// The order is deterministic: kind rank (int < sym < tuple < set), then
// content; sequences compare lexicographically with shorter-is-smaller on
// equal prefixes; sets compare as their sorted element sequences.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lcsim {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class Value {
 public:
  enum class Kind { Int, Sym, Tup, Set };

  Value() : Value(num(0)) {}

  static Value num(long long v) {
    Node n;
    n.kind = Kind::Int;
    n.ival = v;
    n.hash = mix(0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(v) + 1);
    return Value(std::make_shared<const Node>(std::move(n)));
  }

  static Value sym(std::string s) {
    Node n;
    n.kind = Kind::Sym;
    n.sval = std::move(s);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : n.sval) h = mix(h, c + 0x100);
    n.hash = mix(h, 2);
    return Value(std::make_shared<const Node>(std::move(n)));
  }

  static Value tup(std::vector<Value> items) {
    Node n;
    n.kind = Kind::Tup;
    n.items = std::move(items);
    n.hash = seq_hash(n.items, 3);
    return Value(std::make_shared<const Node>(std::move(n)));
  }

  // Sorts and deduplicates.
  static Value set(std::vector<Value> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    Node n;
    n.kind = Kind::Set;
    n.items = std::move(items);
    n.hash = seq_hash(n.items, 4);
    return Value(std::make_shared<const Node>(std::move(n)));
  }

  Kind kind() const { return p_->kind; }
  bool is_int() const { return p_->kind == Kind::Int; }
  bool is_sym() const { return p_->kind == Kind::Sym; }
  bool is_tup() const { return p_->kind == Kind::Tup; }
  bool is_set() const { return p_->kind == Kind::Set; }

  long long ival() const {
    if (!is_int()) throw Error("value is not an integer: " + to_text());
    return p_->ival;
  }
  const std::string& sval() const {
    if (!is_sym()) throw Error("value is not a symbol: " + to_text());
    return p_->sval;
  }
  const std::vector<Value>& items() const {
    if (!is_tup() && !is_set()) throw Error("value has no items: " + to_text());
    return p_->items;
  }
  std::size_t size() const { return items().size(); }
  const Value& at(std::size_t i) const { return items().at(i); }

  bool set_contains(const Value& v) const {
    const auto& xs = items();
    return std::binary_search(xs.begin(), xs.end(), v);
  }

  Value set_insert(const Value& v) const {
    if (set_contains(v)) return *this;
    std::vector<Value> xs = items();
    xs.push_back(v);
    return set(std::move(xs));
  }

  Value set_union(const Value& other) const {
    std::vector<Value> xs = items();
    const auto& ys = other.items();
    xs.insert(xs.end(), ys.begin(), ys.end());
    return set(std::move(xs));
  }

  // Returns a copy of a tuple with item i replaced.
  Value with_item(std::size_t i, const Value& v) const {
    if (!is_tup()) throw Error("with_item on non-tuple");
    std::vector<Value> xs = items();
    xs.at(i) = v;
    return tup(std::move(xs));
  }

  std::uint64_t hash() const { return p_->hash; }

  friend int compare(const Value& a, const Value& b) {
    if (a.p_ == b.p_) return 0;
    int ra = rank(a.p_->kind), rb = rank(b.p_->kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.p_->kind) {
      case Kind::Int:
        if (a.p_->ival != b.p_->ival) return a.p_->ival < b.p_->ival ? -1 : 1;
        return 0;
      case Kind::Sym: {
        int c = a.p_->sval.compare(b.p_->sval);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
      }
      case Kind::Tup:
      case Kind::Set: {
        const auto& xs = a.p_->items;
        const auto& ys = b.p_->items;
        std::size_t m = std::min(xs.size(), ys.size());
        for (std::size_t i = 0; i < m; ++i) {
          int c = compare(xs[i], ys[i]);
          if (c != 0) return c;
        }
        if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
        return 0;
      }
    }
    return 0;
  }

  bool operator==(const Value& o) const {
    if (p_ == o.p_) return true;
    if (p_->hash != o.p_->hash) return false;
    return compare(*this, o) == 0;
  }
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const { return compare(*this, o) < 0; }
  bool operator<=(const Value& o) const { return compare(*this, o) <= 0; }
  bool operator>(const Value& o) const { return compare(*this, o) > 0; }
  bool operator>=(const Value& o) const { return compare(*this, o) >= 0; }

  std::string to_text() const {
    std::string out;
    print(out);
    return out;
  }

  static Value parse(std::string_view text) {
    std::size_t pos = 0;
    Value v = parse_one(text, pos);
    skip_ws(text, pos);
    if (pos != text.size()) throw Error("trailing input in label: " + std::string(text));
    return v;
  }

 private:
  struct Node {
    Kind kind = Kind::Int;
    long long ival = 0;
    std::string sval;
    std::vector<Value> items;
    std::uint64_t hash = 0;
  };

  explicit Value(std::shared_ptr<const Node> p) : p_(std::move(p)) {}

  static int rank(Kind k) { return static_cast<int>(k); }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0x100000001b3ULL;
  }

  static std::uint64_t seq_hash(const std::vector<Value>& xs, std::uint64_t salt) {
    std::uint64_t h = mix(0x2545f4914f6cdd1dULL, salt);
    for (const auto& x : xs) h = mix(h, x.hash());
    return mix(h, xs.size() + 7);
  }

  void print(std::string& out) const {
    switch (p_->kind) {
      case Kind::Int:
        out += std::to_string(p_->ival);
        break;
      case Kind::Sym:
        out += p_->sval;
        break;
      case Kind::Tup:
      case Kind::Set: {
        out += p_->kind == Kind::Tup ? '(' : '{';
        bool first = true;
        for (const auto& x : p_->items) {
          if (!first) out += ' ';
          first = false;
          x.print(out);
        }
        out += p_->kind == Kind::Tup ? ')' : '}';
        break;
      }
    }
  }

  static void skip_ws(std::string_view t, std::size_t& pos) {
    while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t')) ++pos;
  }

  static bool sym_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c == '+';
  }

  static Value parse_one(std::string_view t, std::size_t& pos) {
    skip_ws(t, pos);
    if (pos >= t.size()) throw Error("unexpected end of label text");
    char c = t[pos];
    if (c == '(' || c == '{') {
      char close = c == '(' ? ')' : '}';
      ++pos;
      std::vector<Value> items;
      while (true) {
        skip_ws(t, pos);
        if (pos >= t.size()) throw Error("unterminated label sequence");
        if (t[pos] == close) {
          ++pos;
          break;
        }
        items.push_back(parse_one(t, pos));
      }
      return c == '(' ? tup(std::move(items)) : set(std::move(items));
    }
    if (c == '-' || (c >= '0' && c <= '9')) {
      std::size_t start = pos;
      if (c == '-') ++pos;
      if (pos >= t.size() || !(t[pos] >= '0' && t[pos] <= '9'))
        throw Error("bad integer in label text");
      while (pos < t.size() && t[pos] >= '0' && t[pos] <= '9') ++pos;
      return num(std::stoll(std::string(t.substr(start, pos - start))));
    }
    if (sym_char(c)) {
      std::size_t start = pos;
      while (pos < t.size() && sym_char(t[pos])) ++pos;
      return sym(std::string(t.substr(start, pos - start)));
    }
    throw Error(std::string("bad character in label text: ") + c);
  }

  std::shared_ptr<const Node> p_;
};

inline Value v_num(long long v) { return Value::num(v); }
inline Value v_sym(const char* s) { return Value::sym(s); }
inline Value v_tup(std::vector<Value> items) { return Value::tup(std::move(items)); }
inline Value v_set(std::vector<Value> items) { return Value::set(std::move(items)); }

}  // namespace lcsim
