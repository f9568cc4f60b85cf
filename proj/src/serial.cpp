#include "bllp/serial.hpp"

#include "bllp/syntax.hpp"
#include "json.hpp"

namespace bllp {

using nlohmann::json;

namespace {

// Parses a field, prefixing errors with its location in the document.
template <class F>
auto field(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.pos());
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what(), 0);
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what(), 0);
  }
}

json ctx_json(const std::map<std::string, LabelledFormula>& c) {
  json out = json::object();
  for (const auto& [k, f] : c) out[k] = f.str();
  return out;
}

std::map<std::string, LabelledFormula> ctx_of(const json& j, const std::string& where) {
  std::map<std::string, LabelledFormula> out;
  if (j.is_null()) return out;
  for (const auto& [k, v] : j.items())
    out[k] = field(where + "." + k, [&] { return parse_labelled(v.get<std::string>()); });
  return out;
}

json derivation_json(const Derivation& d) {
  json j;
  j["rule"] = to_string(d.rule);
  j["conclusion"] = {{"lam", ctx_json(d.conclusion.lam_ctx)},
                     {"subject", d.conclusion.subject.str()},
                     {"type", d.conclusion.type.str()},
                     {"mu", ctx_json(d.conclusion.mu_ctx)}};
  if (!d.polys.empty()) {
    json p = json::object();
    for (const auto& [k, v] : d.polys) p[k] = v.str();
    j["polys"] = p;
  }
  if (!d.upsilon.empty() || !d.pi.empty()) j["witnesses"] = {{"upsilon", ctx_json(d.upsilon)}, {"pi", ctx_json(d.pi)}};
  if (!d.names.empty()) j["names"] = d.names;
  j["premises"] = json::array();
  for (const auto& p : d.premises) j["premises"].push_back(derivation_json(p));
  return j;
}

Derivation derivation_of(const json& j, const std::string& where) {
  TypingRule rule = field(where + ".rule", [&] { return parse_typing_rule(j.at("rule").get<std::string>()); });
  const json& c = field(where, [&]() -> const json& { return j.at("conclusion"); });
  Judgment concl{ctx_of(c.value("lam", json()), where + ".lam"),
                 field(where + ".subject", [&] { return parse_term(c.at("subject").get<std::string>()); }),
                 field(where + ".type", [&] { return parse_labelled(c.at("type").get<std::string>()); }),
                 ctx_of(c.value("mu", json()), where + ".mu")};
  Derivation d{rule, concl, {}, {}, {}, {}, {}};
  if (j.contains("polys"))
    for (const auto& [k, v] : j.at("polys").items())
      d.polys[k] = field(where + ".polys." + k, [&] { return parse_poly(v.get<std::string>()); });
  if (j.contains("witnesses")) {
    const json& w = j.at("witnesses");
    d.upsilon = ctx_of(w.value("upsilon", json()), where + ".upsilon");
    d.pi = ctx_of(w.value("pi", json()), where + ".pi");
  }
  if (j.contains("names"))
    d.names = field(where + ".names", [&] { return j.at("names").get<std::map<std::string, std::string>>(); });
  if (j.contains("premises"))
    for (std::size_t i = 0; i < j.at("premises").size(); ++i)
      d.premises.push_back(derivation_of(j.at("premises")[i], where + "/" + std::to_string(i)));
  return d;
}

json proof_json(const Proof& p) {
  json j;
  j["rule"] = to_string(p.rule);
  j["conclusion"] = json::array();
  for (const auto& f : p.conclusion) j["conclusion"].push_back(f.str());
  if (p.principal >= 0) j["principal"] = p.principal;
  if (!p.premises.empty()) {
    j["links"] = p.links;
    j["premises"] = json::array();
    for (const auto& q : p.premises) j["premises"].push_back(proof_json(q));
  }
  return j;
}

Proof proof_of(const json& j, const std::string& where) {
  Proof p;
  p.rule = field(where + ".rule", [&] { return parse_proof_rule(j.at("rule").get<std::string>()); });
  for (std::size_t i = 0; i < j.at("conclusion").size(); ++i)
    p.conclusion.push_back(field(where + ".conclusion[" + std::to_string(i) + "]",
                                 [&] { return parse_labelled(j.at("conclusion")[i].get<std::string>()); }));
  p.principal = j.value("principal", -1);
  if (j.contains("premises")) {
    p.links = field(where + ".links", [&] { return j.at("links").get<std::vector<std::vector<int>>>(); });
    for (std::size_t i = 0; i < j.at("premises").size(); ++i)
      p.premises.push_back(proof_of(j.at("premises")[i], where + "/" + std::to_string(i)));
  }
  if (p.links.size() != p.premises.size()) throw ParseError(where + ": links do not match premises", 0);
  return p;
}

json load(const std::string& text, const char* kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + kind + " file: " + e.what(), e.byte);
  }
  if (!j.is_object() || j.value("format", "") != kind)
    throw ParseError(std::string("not a ") + kind + " file", 0);
  if (j.value("version", -1) != kFormatVersion)
    throw ParseError("unsupported " + std::string(kind) + " format version", 0);
  if (!j.contains("root")) throw ParseError(std::string(kind) + " file has no root", 0);
  return j;
}

}  // namespace

std::string derivation_to_text(const Derivation& d, int indent) {
  json j{{"format", "derivation"}, {"version", kFormatVersion}, {"root", derivation_json(d)}};
  return j.dump(indent);
}

Derivation parse_derivation(const std::string& text) {
  json j = load(text, "derivation");
  return field("root", [&] { return derivation_of(j.at("root"), "root"); });
}

std::string proof_to_text(const Proof& p, int indent) {
  json j{{"format", "proof"}, {"version", kFormatVersion}, {"root", proof_json(p)}};
  return j.dump(indent);
}

Proof parse_proof(const std::string& text) {
  json j = load(text, "proof");
  return field("root", [&] { return proof_of(j.at("root"), "root"); });
}

}  // namespace bllp
