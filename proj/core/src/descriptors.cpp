#include "treehardy/descriptors.hpp"

#include <cerrno>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "treehardy/errors.hpp"

namespace treehardy {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

/** Split on `sep`, ignoring separators nested inside parentheses. */
std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') {
      --depth;
      if (depth < 0) fail("unbalanced ')' in descriptor '" + text + "'");
    }
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) fail("unbalanced '(' in descriptor '" + text + "'");
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  if (text.empty()) fail(what + " is empty");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size())
    fail(what + " is not a number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  if (text.empty()) fail(what + " is empty");
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size())
    fail(what + " is not an integer: '" + text + "'");
  return v;
}

struct Descriptor {
  std::string kind;
  std::map<std::string, std::string> params;
};

/** Split "kind:key=val,key=val" (params optional) into pieces. */
Descriptor crack(const std::string& text) {
  Descriptor d;
  auto pos = text.find(':');
  if (pos == std::string::npos) {
    d.kind = text;
    return d;
  }
  d.kind = text.substr(0, pos);
  std::string rest = text.substr(pos + 1);
  if (rest.empty()) fail("descriptor '" + text + "' has an empty parameter list");
  for (const std::string& tok : split_top(rest, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      fail("expected key=value but got '" + tok + "' in '" + text + "'");
    std::string key = tok.substr(0, eq);
    if (d.params.count(key)) fail("duplicate parameter '" + key + "' in '" + text + "'");
    d.params[key] = tok.substr(eq + 1);
  }
  return d;
}

void check_keys(const Descriptor& d, const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
  for (const auto& [key, value] : d.params) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      fail("unexpected parameter '" + key + "' for '" + d.kind + "'");
  }
  for (const std::string& key : required) {
    if (!d.params.count(key)) fail("'" + d.kind + "' needs parameter '" + key + "'");
  }
}

int get_q(const Descriptor& d) {
  long long q = parse_int(d.params.at("q"), "q");
  if (q < 2 || q > 1'000'000'000) fail("q = " + d.params.at("q") + " is out of range");
  return static_cast<int>(q);
}

std::optional<double> get_opt(const Descriptor& d, const std::string& key) {
  auto it = d.params.find(key);
  if (it == d.params.end()) return std::nullopt;
  return parse_double(it->second, key);
}

/** q for a function descriptor: explicit q=, else the context tree's q. */
int q_from(const Descriptor& d, const std::optional<RadialTreeSpec>& context) {
  if (d.params.count("q")) return get_q(d);
  if (context && context->is_homogeneous()) return context->q();
  fail("'" + d.kind + "' needs q=<int> or a homogeneous tree context");
}

/** Resolve the tree for spec=(...) families, falling back to the context. */
RadialTreeSpec resolve_tree(const Descriptor& d,
                            const std::optional<RadialTreeSpec>& context) {
  auto it = d.params.find("spec");
  if (it != d.params.end()) {
    const std::string& v = it->second;
    if (v.size() < 2 || v.front() != '(' || v.back() != ')')
      fail("spec must be parenthesized: spec=(...) in '" + d.kind + "'");
    return parse_tree_spec(v.substr(1, v.size() - 2));
  }
  if (context) return *context;
  fail("'" + d.kind + "' needs spec=(...) or a tree from the surrounding context");
}

}  // namespace

RadialTreeSpec parse_tree_spec(const std::string& text) {
  auto pos = text.find(':');
  std::string kind = pos == std::string::npos ? text : text.substr(0, pos);
  std::string rest = pos == std::string::npos ? "" : text.substr(pos + 1);

  if (kind == "homogeneous") {
    Descriptor d = crack(text);
    check_keys(d, {"q"});
    return RadialTreeSpec::homogeneous(get_q(d));
  }
  if (kind == "custom") {
    // custom:prefix=2,3,4;extend=repeat   |   ...;extend=affine:a,b
    std::vector<std::string> segments = split_top(rest, ';');
    if (segments.size() != 2)
      fail("custom tree needs exactly 'prefix=...;extend=...': '" + text + "'");
    if (segments[0].rfind("prefix=", 0) != 0)
      fail("custom tree must start with 'prefix=': '" + text + "'");
    if (segments[1].rfind("extend=", 0) != 0)
      fail("custom tree must end with 'extend=': '" + text + "'");
    std::vector<std::int64_t> prefix;
    for (const std::string& item : split_top(segments[0].substr(7), ','))
      prefix.push_back(parse_int(item, "prefix entry"));
    std::string how = segments[1].substr(7);
    if (how == "repeat")
      return RadialTreeSpec::custom(std::move(prefix), RadialTreeSpec::Extend::RepeatLast);
    if (how.rfind("affine:", 0) == 0) {
      std::vector<std::string> ab = split_top(how.substr(7), ',');
      if (ab.size() != 2) fail("affine extension needs two coefficients: '" + how + "'");
      double a = parse_double(ab[0], "affine coefficient");
      double b = parse_double(ab[1], "affine offset");
      return RadialTreeSpec::custom(std::move(prefix), RadialTreeSpec::Extend::Affine, a, b);
    }
    fail("unknown extension '" + how + "' (expected repeat or affine:a,b)");
  }
  fail("unknown tree family '" + kind + "'");
}

WeightSpec parse_weight_spec(const std::string& text,
                             const std::optional<RadialTreeSpec>& context_tree) {
  Descriptor d = crack(text);
  if (d.kind == "wopt") {
    check_keys(d, {"q"});
    return WeightSpec::optimal(get_q(d));
  }
  if (d.kind == "wbg") {
    check_keys(d, {"q", "beta", "gamma"});
    return WeightSpec::beta_gamma(get_q(d), parse_double(d.params.at("beta"), "beta"),
                                  parse_double(d.params.at("gamma"), "gamma"));
  }
  if (d.kind == "whg") {
    check_keys(d, {"q", "gamma"});
    return WeightSpec::half_gamma(get_q(d), parse_double(d.params.at("gamma"), "gamma"));
  }
  if (d.kind == "wradial") {
    check_keys(d, {"beta", "gamma"}, {"spec", "psi1"});
    RadialTreeSpec tree = resolve_tree(d, context_tree);
    double psi1 = get_opt(d, "psi1").value_or(1.0);
    return WeightSpec::radial_tree(std::move(tree), parse_double(d.params.at("beta"), "beta"),
                                   parse_double(d.params.at("gamma"), "gamma"), psi1);
  }
  if (d.kind == "rq") {
    check_keys(d, {"q"});
    return WeightSpec::remainder_rq(get_q(d));
  }
  if (d.kind == "rbg") {
    check_keys(d, {"q", "beta", "gamma"});
    return WeightSpec::remainder_beta_gamma(get_q(d),
                                            parse_double(d.params.at("beta"), "beta"),
                                            parse_double(d.params.at("gamma"), "gamma"));
  }
  if (d.kind == "rbar") {
    check_keys(d, {"q"});
    return WeightSpec::remainder_bar(get_q(d));
  }
  fail("unknown weight family '" + d.kind + "'");
}

RadialFunction parse_radial_function(const std::string& text,
                                     const std::optional<RadialTreeSpec>& context_tree) {
  Descriptor d = crack(text);
  if (d.kind == "green-sqrt") {
    check_keys(d, {}, {"q"});
    return RadialFunction::green_sqrt(q_from(d, context_tree));
  }
  if (d.kind == "u") {
    check_keys(d, {"beta"}, {"q", "gamma"});
    return RadialFunction::u_beta_gamma(q_from(d, context_tree),
                                        parse_double(d.params.at("beta"), "beta"),
                                        get_opt(d, "gamma"));
  }
  if (d.kind == "u3") {
    check_keys(d, {"alpha", "beta"}, {"q", "gamma"});
    return RadialFunction::u_alpha_beta_gamma(
        q_from(d, context_tree), parse_double(d.params.at("alpha"), "alpha"),
        parse_double(d.params.at("beta"), "beta"), get_opt(d, "gamma"));
  }
  if (d.kind == "pair-u") {
    check_keys(d, {}, {"q", "gamma"});
    return RadialFunction::pair_u(q_from(d, context_tree), get_opt(d, "gamma"));
  }
  if (d.kind == "pair-v") {
    check_keys(d, {}, {"q", "gamma"});
    return RadialFunction::pair_v(q_from(d, context_tree), get_opt(d, "gamma"));
  }
  if (d.kind == "ground-z") {
    check_keys(d, {}, {"q", "gamma"});
    return RadialFunction::ground_z(q_from(d, context_tree), get_opt(d, "gamma"));
  }
  if (d.kind == "quotient-u0") {
    check_keys(d, {});
    return RadialFunction::quotient_u0();
  }
  if (d.kind == "radial-u") {
    check_keys(d, {"beta"}, {"spec", "gamma", "psi1"});
    RadialTreeSpec tree = resolve_tree(d, context_tree);
    double psi1 = get_opt(d, "psi1").value_or(1.0);
    return RadialFunction::radial_tree_u(std::move(tree), psi1,
                                         parse_double(d.params.at("beta"), "beta"),
                                         get_opt(d, "gamma"));
  }
  if (d.kind == "const") {
    check_keys(d, {"c"});
    return RadialFunction::constant(parse_double(d.params.at("c"), "c"));
  }
  fail("unknown function family '" + d.kind + "'");
}

}  // namespace treehardy
