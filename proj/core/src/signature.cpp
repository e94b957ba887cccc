#include "scopedeq/signature.hpp"

#include <cctype>
#include <set>

#include "scopedeq/error.hpp"

namespace scopedeq {

std::string to_string(const ParamArity& arity) {
  std::string out = "(" + std::to_string(arity.params) + " | ";
  if (arity.binders.empty()) {
    out += "-";
  }
  for (std::size_t i = 0; i < arity.binders.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(arity.binders[i]);
  }
  return out + ")";
}

bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  if (!word(token.front())) return false;
  for (char c : token.substr(1)) {
    if (!word(c) && c != '\'') return false;
  }
  return true;
}

Signature::Signature(std::initializer_list<std::pair<const std::string, ParamArity>> ops) {
  for (const auto& [name, arity] : ops) add(name, arity);
}

void Signature::add(std::string name, ParamArity arity) {
  if (!is_identifier(name)) {
    throw SignatureError("malformed operation name '" + name + "'");
  }
  if (contains(name)) {
    throw SignatureError("duplicate operation '" + name + "'");
  }
  ops_.emplace(std::move(name), std::move(arity));
}

const ParamArity* Signature::find(std::string_view name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const ParamArity& Signature::at(std::string_view name) const {
  if (const auto* arity = find(name)) return *arity;
  throw SignatureError("unknown operation '" + std::string(name) + "'");
}

Signature encode_scoped_signature(const ScopedSignature& s) {
  Signature out;
  for (const auto& [name, k] : s.algebraic) {
    if (name == kCloseOp) throw SignatureError("'close' is reserved");
    out.add(name, ParamArity{0, std::vector<std::size_t>(k, 0)});
  }
  for (const auto& [name, k] : s.scoped) {
    if (name == kCloseOp) throw SignatureError("'close' is reserved");
    if (s.algebraic.contains(name)) {
      throw SignatureError("operation '" + name + "' is both algebraic and scoped");
    }
    out.add(name, ParamArity{0, std::vector<std::size_t>(k, 1)});
  }
  out.add(std::string(kCloseOp), ParamArity{1, {0}});
  return out;
}

std::vector<std::string> validate_signature(
    const std::vector<std::pair<std::string, ParamArity>>& declarations) {
  std::vector<std::string> report;
  std::set<std::string, std::less<>> seen;
  for (const auto& [name, arity] : declarations) {
    if (!is_identifier(name)) {
      report.push_back("malformed operation name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      report.push_back("duplicate operation '" + name + "'");
    }
  }
  return report;
}

std::vector<std::string> validate_signature(const Signature& sig) {
  std::vector<std::pair<std::string, ParamArity>> decls(sig.begin(), sig.end());
  return validate_signature(decls);
}

}  // namespace scopedeq
