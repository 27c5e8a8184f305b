#include "bgeom/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "bgeom/errors.hpp"

namespace bgeom {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_int(std::string_view s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "'");
  return static_cast<double>(v);
}

double number(const YAML::Node& n, const std::string& what) {
  if (!n || !n.IsScalar()) throw ParseError(what + " must be a number");
  return parse_number(n.Scalar());
}

Vec vector(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) throw ParseError(what + " must be a list of numbers");
  Vec v(static_cast<Eigen::Index>(n.size()));
  for (std::size_t i = 0; i < n.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(n[i], what);
  return v;
}

std::vector<Vec> vectors(const YAML::Node& n, const std::string& what) {
  if (!n || !n.IsSequence()) throw ParseError(what + " must be a list of vectors");
  std::vector<Vec> out;
  for (const auto& row : n) out.push_back(vector(row, what));
  return out;
}

SpaceSpec space_spec(const YAML::Node& doc) {
  if (!doc.IsMap()) throw ParseError("space document must be a mapping");
  SpaceSpec s;
  if (!doc["kind"]) throw ParseError("missing 'kind'");
  s.kind = doc["kind"].as<std::string>();
  if (doc["dim"]) {
    const double d = number(doc["dim"], "dim");
    if (d < 1 || d != static_cast<int>(d)) throw ParseError("dim must be a positive integer");
    s.dim = static_cast<int>(d);
  }
  if (s.kind == "facet" || s.kind == "vertex") {
    s.rows = vectors(doc["rows"], "rows");
  } else if (s.kind == "lp") {
    if (s.dim == 0) throw ParseError("lp needs 'dim'");
    s.p = number(doc["p"], "p");
  } else if (s.kind == "sum_inf" || s.kind == "sum_1") {
    const auto parts = doc["parts"];
    if (!parts || !parts.IsSequence() || parts.size() == 0) throw ParseError("sum needs a nonempty 'parts' list");
    for (const auto& p : parts) s.parts.push_back(space_spec(p));
  } else if (s.kind == "quotient") {
    if (!doc["parent"]) throw ParseError("quotient needs 'parent'");
    s.parent = std::make_shared<SpaceSpec>(space_spec(doc["parent"]));
    s.kernel = vectors(doc["kernel"], "kernel");
  } else {
    throw ParseError("unknown kind '" + s.kind + "'");
  }
  return s;
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(e.what());
  }
}

template <class F>
auto wrap_yaml(F&& f) {
  try {
    return f();
  } catch (const YAML::Exception& e) {
    throw ParseError(e.what());
  }
}

int positive_int(std::string_view s, const std::string& target) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || v < 1)
    throw ParseError("bad dimension in '" + target + "'");
  return v;
}

Space facet_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Vec> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> row;
    for (std::string tok; ls >> tok;) row.push_back(parse_number(tok));
    if (!row.empty()) rows.push_back(Eigen::Map<const Vec>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  if (rows.empty()) throw ParseError("'" + path + "' has no rows");
  return Space::facet(std::move(rows));
}

DenseRule::Kind rule_kind(const std::string& name) {
  if (name == "basis") return DenseRule::Kind::Basis;
  if (name == "ball-grid") return DenseRule::Kind::BallGrid;
  if (name == "custom") return DenseRule::Kind::Custom;
  throw ParseError("unknown dense rule '" + name + "'");
}

}  // namespace

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return Space::kInf;
  if (text == "-inf") return -Space::kInf;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_int(text.substr(0, slash));
    const double den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
    throw ParseError("bad number '" + std::string(text) + "'");
  return v;
}

SpaceSpec parse_space_spec(const std::string& text) {
  const auto doc = load_yaml(text);
  return wrap_yaml([&] { return space_spec(doc); });
}

SpaceSpec load_space_spec(const std::string& path) { return parse_space_spec(read_file(path)); }

Space resolve_space(const std::string& target) {
  const auto colon = target.find(':');
  if (colon != std::string::npos) {
    const std::string head = target.substr(0, colon);
    const std::string_view rest = std::string_view(target).substr(colon + 1);
    if (head == "linf") return Space::linf(positive_int(rest, target));
    if (head == "l1") return Space::l1(positive_int(rest, target));
    if (head == "l2") return Space::l2(positive_int(rest, target));
    if (head == "lp") {
      const auto c2 = rest.find(':');
      if (c2 == std::string_view::npos) throw ParseError("expected lp:p:n, got '" + target + "'");
      return Space::lp(positive_int(rest.substr(c2 + 1), target), parse_number(rest.substr(0, c2)));
    }
    if (head == "facet") return facet_file(std::string(rest));
  }
  return construct_space(load_space_spec(target));
}

SeminormCode parse_code_spec(const std::string& text) {
  const auto doc = load_yaml(text);
  return wrap_yaml([&] {
    if (!doc.IsMap() || !doc["space"]) throw ParseError("code document needs 'space'");
    const auto sn = doc["space"];
    const Space space = sn.IsScalar() ? resolve_space(sn.Scalar()) : construct_space(space_spec(sn));
    DenseRule rule;
    rule.kind = doc["dense_rule"] ? rule_kind(doc["dense_rule"].as<std::string>()) : DenseRule::Kind::Basis;
    if (rule.kind == DenseRule::Kind::Custom) {
      rule.vectors = vectors(doc["vectors"], "vectors");
      const std::string tail = doc["tail"] ? doc["tail"].as<std::string>() : "basis";
      if (tail == "zero") {
        rule.zero_tail = true;
      } else {
        rule.tail = rule_kind(tail);
        if (rule.tail == DenseRule::Kind::Custom) throw ParseError("tail cannot be custom");
      }
    }
    return encode_space(space, std::move(rule));
  });
}

SeminormCode resolve_code(const std::string& target) {
  if (target.find(':') == std::string::npos) {
    const std::string text = read_file(target);
    const auto doc = load_yaml(text);
    if (doc.IsMap() && doc["space"]) return parse_code_spec(text);
    return encode_space(construct_space(parse_space_spec(text)), DenseRule::basis());
  }
  return encode_space(resolve_space(target), DenseRule::basis());
}

}  // namespace bgeom
