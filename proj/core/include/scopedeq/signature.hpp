#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scopedeq {

// Arity (p | m_1 ... m_k): the operation consumes `params` parameters from the
// top of the stack and has one continuation per entry of `binders`, the i-th
// binding binders[i] fresh parameters.
struct ParamArity {
  std::size_t params = 0;
  std::vector<std::size_t> binders;

  std::size_t continuations() const { return binders.size(); }

  friend bool operator==(const ParamArity&, const ParamArity&) = default;
  friend auto operator<=>(const ParamArity&, const ParamArity&) = default;
};

// "(1 | 0)", "(0 | -)", "(0 | 1, 1)".
std::string to_string(const ParamArity& arity);

// Operation names: [A-Za-z0-9_][A-Za-z0-9_']*.
bool is_identifier(std::string_view token);

inline constexpr std::string_view kCloseOp = "close";

// A finite set of named operations. Iteration order is lexicographic by name.
class Signature {
 public:
  using Map = std::map<std::string, ParamArity, std::less<>>;

  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, ParamArity>> ops);

  // Throws SignatureError on a duplicate or malformed name.
  void add(std::string name, ParamArity arity);

  bool contains(std::string_view name) const { return ops_.find(name) != ops_.end(); }
  const ParamArity* find(std::string_view name) const;
  // Throws SignatureError when the name is unknown.
  const ParamArity& at(std::string_view name) const;

  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  Map::const_iterator begin() const { return ops_.begin(); }
  Map::const_iterator end() const { return ops_.end(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  Map ops_;
};

// Algebraic operations of arity k and scoped operations delimiting k scopes.
struct ScopedSignature {
  std::map<std::string, std::size_t, std::less<>> algebraic;
  std::map<std::string, std::size_t, std::less<>> scoped;
};

// Algebraic o:k becomes (0 | 0^k), scoped s:k becomes (0 | 1^k), and a single
// shared close:(1 | 0) is added. Throws SignatureError on name clashes.
Signature encode_scoped_signature(const ScopedSignature& s);

// Invariant violations of a raw declaration list: duplicate names and
// malformed tokens. Empty iff the declarations form a valid Signature.
std::vector<std::string> validate_signature(
    const std::vector<std::pair<std::string, ParamArity>>& declarations);
std::vector<std::string> validate_signature(const Signature& sig);

}  // namespace scopedeq
