#include "extrans/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace extrans {

using json = nlohmann::json;

namespace {

const char* kVersion = "extrans 1.0.0";

// ---- input side

[[noreturn]] void schema(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::SchemaError, key + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) schema(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

Integer read_integer(const json& j, const std::string& key) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) {
    auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) schema(key, "integer out of range");
    return Integer(static_cast<long>(v));
  }
  schema(key, "expected an integer");
}

Rational read_rational(const json& j, const std::string& key) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(read_integer(j, key));
  if (!j.is_string()) schema(key, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(key, e.detail());
  }
}

IntVec read_intvec(const json& j, const std::string& key, std::optional<std::size_t> len) {
  if (!j.is_array()) schema(key, "expected an array");
  if (len && j.size() != *len)
    schema(key, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], key + "[" + std::to_string(i) + "]"));
  return v;
}

bool read_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) schema(key, "expected true or false");
  return j.get<bool>();
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ---- output side

json jint(const Integer& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

json jintvec(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

json jq(const Rational& q) { return json(q.get_str()); }

json jqvec(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jq(x));
  return a;
}

json jmask(Mask s) {
  json a = json::array();
  for (int i : indices_of(s)) a.push_back(i);
  return a;
}

json jmasks(const std::vector<Mask>& ms) {
  json a = json::array();
  for (Mask s : ms) a.push_back(jmask(s));
  return a;
}

json jchecks(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

json jvalidation(const ValidationReport& v) {
  return {{"full_set_anticone", v.full_set_anticone},
          {"upward_closed", v.upward_closed},
          {"full_dimensional", v.full_dimensional},
          {"simplicial", v.simplicial},
          {"failures", v.failures},
          {"minimal_anticones", jmasks(v.family.minimal)},
          {"ok", v.ok()}};
}

json jpresentation(const GitPresentation& p) {
  json chars = json::array();
  for (const auto& c : p.characters) chars.push_back(jintvec(c));
  json labels = json::array();
  for (int i = 0; i < p.m(); ++i) labels.push_back(p.label(i));
  return {{"torus_rank", p.r}, {"characters", chars}, {"stability", jqvec(p.omega)}, {"labels", labels}};
}

// 1-based names for people
std::string human_cone(const GitPresentation& p, Mask s) {
  std::string out = "{";
  bool first = true;
  for (int i : indices_of(s)) {
    out += (first ? "" : ",") + p.label(i);
    first = false;
  }
  return out + "}";
}

json jfan(const StackyFan& fan) {
  json rays = json::array();
  for (const auto& r : fan.rays) rays.push_back(jqvec(r));
  json beta = json::array();
  for (int i = 0; i < fan.beta.rows; ++i) beta.push_back(jintvec(fan.beta.row(i)));
  json torsion = json::array();
  for (const auto& t : fan.torsion) torsion.push_back(jint(t));
  return {{"rank", fan.n},
          {"torsion", torsion},
          {"beta", beta},
          {"rays", rays},
          {"max_cones", jmasks(fan.max_cones)},
          {"extended", jmask(fan.extended)}};
}

json jsector_ring(const SectorRing& s, bool narrow) {
  const GradedRing& R = s.ring;
  json j;
  j["nu"] = jqvec(s.sector.nu);
  j["age"] = jq(s.sector.age);
  j["degree_shift"] = jq(s.degree_shift);
  j["index_map"] = s.sector.index_map;
  j["variables"] = R.names();
  json lin = json::array(), higher = json::array();
  for (const auto& p : R.linear_relations()) lin.push_back(to_string(p, R.names()));
  for (const auto& p : R.higher_relations()) higher.push_back(to_string(p, R.names()));
  j["linear_relations"] = lin;
  j["relations"] = higher;
  j["dims"] = R.dims();
  j["total_dim"] = R.total_dim();
  json basis = json::array();
  for (int d = 0; d <= R.degree_cap(); ++d) {
    json row = json::array();
    for (int k = 0; k < R.dim(d); ++k) {
      CohClass c = R.zero(d);
      c.coords[k] = 1;
      row.push_back(R.format(c));
    }
    basis.push_back(row);
  }
  j["basis"] = basis;
  if (narrow) {
    NarrowSpace ns = narrow_by_interior_cones(R, s.fan);
    json gens = json::array();
    for (Mask g : ns.generators) {
      Monomial mono(R.nvars(), 0);
      for (int i : indices_of(g)) mono[i] = 1;
      gens.push_back(R.format(R.from_poly(poly_monomial(mono))));
    }
    json nb = json::array();
    for (std::size_t d = 0; d < ns.space.rows.size(); ++d) {
      json row = json::array();
      for (const auto& v : ns.space.rows[d]) row.push_back(R.format(CohClass{static_cast<int>(d), v}));
      nb.push_back(row);
    }
    j["narrow"] = {{"generators", gens},
                   {"generator_cones", jmasks(ns.generators)},
                   {"dims", ns.space.dims()},
                   {"total_dim", ns.space.total_dim()},
                   {"basis", nb}};
  }
  return j;
}

json jcohomology(const GitPresentation& p, const std::vector<int>& preferred, bool narrow, bool all_sectors,
                 std::ostringstream& text, const std::string& name) {
  auto fam = validated_anticones(p);
  auto rings = chen_ruan(p, fam, preferred);
  json sectors = json::array();
  int total = 0;
  for (const auto& s : rings) {
    if (!all_sectors && !s.sector.untwisted()) continue;
    sectors.push_back(jsector_ring(s, narrow));
    total += s.ring.total_dim();
    text << "  " << name << " sector nu=" << to_string(s.sector.nu) << " dims";
    for (int d : s.ring.dims()) text << ' ' << d;
    text << '\n';
    for (const auto& rel : s.ring.higher_relations()) text << "    relation " << to_string(rel, s.ring.names()) << '\n';
    if (narrow) {
      const json& nj = sectors.back()["narrow"];
      text << "    narrow generated by";
      for (const auto& g : nj["generators"]) text << ' ' << g.get<std::string>() << ';';
      text << " total " << nj["total_dim"].get<int>() << '\n';
    }
  }
  return {{"sectors", sectors}, {"sector_count", rings.size()}, {"total_dim", total}};
}

json jsupport(const SupportFunctionData& s) {
  json ms = json::array();
  for (std::size_t i = 0; i < s.cones.size(); ++i) ms.push_back({{"cone", jmask(s.cones[i])}, {"m", jqvec(s.m_sigma[i])}});
  return {{"cartier", s.cartier},  {"convex", s.convex}, {"extended_ok", s.extended_ok},
          {"nef", s.nef()},        {"witness", s.witness}, {"m_sigma", ms}};
}

json jwall(const WallChart& w) {
  json pw = json::array();
  for (const auto& p : w.p_wall) pw.push_back(jintvec(p));
  json pairings = json::array();
  for (const auto& x : w.pairings) pairings.push_back(jint(x));
  return {{"e", jintvec(w.e)},
          {"pairings", pairings},
          {"pairing_sum", jint(w.pairing_sum)},
          {"frak_c", jq(w.frak_c)},
          {"crepant", w.crepant},
          {"warnings", w.warnings},
          {"p_wall", pw},
          {"p_minus_last", jintvec(w.p_minus_last)},
          {"p_plus_last", w.p_plus_last ? jintvec(*w.p_plus_last) : json(nullptr)},
          {"c", jintvec(w.c)},
          {"wall_basis_in_cone", w.wall_basis_in_cone}};
}

json jconditions(const ConditionResult& c) {
  json secs = json::array();
  for (const auto& s : c.sectors) {
    secs.push_back({{"nu", jqvec(s.nu)},
                    {"tbar_dim", s.tbar_dim},
                    {"uf_dim", s.uf_dim},
                    {"narrow_t_dim", s.narrow_t_dim},
                    {"injective", s.injective},
                    {"surjective", s.surjective},
                    {"c2", s.c2},
                    {"kernel_witness", to_string(s.kernel_witness, s.names)},
                    {"missing_witness", to_string(s.missing_witness, s.t_names)},
                    {"c2_witness", to_string(s.c2_witness, s.names)}});
  }
  return {{"c1", c.c1},
          {"c2", c.c2},
          {"sectors", secs},
          {"frac_sectors_vanish", c.frac_sectors_vanish},
          {"frac_violations", c.frac_violations}};
}

std::string yes(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string_view to_string(Request r) {
  switch (r) {
    case Request::Validate: return "validate";
    case Request::Fan: return "fan";
    case Request::Cohomology: return "cohomology";
    case Request::Transition: return "transition";
  }
  return "validate";
}

InputDocument parse_input(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end(), nullptr, true, false);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                           (cut == std::string::npos ? msg : msg.substr(cut)));
  }
  if (!j.is_object()) schema("(document)", "expected an object");
  only_keys(j, "", {"torus_rank", "characters", "stability", "divisor", "blowup", "request", "options"});
  for (const char* key : {"torus_rank", "characters", "stability"})
    if (!j.contains(key)) schema(key, "missing");

  InputDocument doc;
  Integer r = read_integer(j["torus_rank"], "torus_rank");
  if (r < 1 || r > 16) schema("torus_rank", "must lie in 1..16");
  doc.torus_rank = static_cast<int>(r.get_si());

  const json& chars = j["characters"];
  if (!chars.is_array() || chars.empty()) schema("characters", "expected a non-empty array");
  if (chars.size() > static_cast<std::size_t>(kMaxCharacters))
    schema("characters", "at most " + std::to_string(kMaxCharacters) + " characters");
  for (std::size_t i = 0; i < chars.size(); ++i)
    doc.characters.push_back(read_intvec(chars[i], "characters[" + std::to_string(i) + "]", doc.torus_rank));
  const std::size_t m = doc.characters.size();

  const json& st = j["stability"];
  if (!st.is_array() || st.size() != static_cast<std::size_t>(doc.torus_rank))
    schema("stability", "expected " + std::to_string(doc.torus_rank) + " entries");
  for (std::size_t i = 0; i < st.size(); ++i) doc.stability.push_back(read_rational(st[i], "stability[" + std::to_string(i) + "]"));

  if (j.contains("divisor")) doc.divisor = read_intvec(j["divisor"], "divisor", m);

  if (j.contains("blowup")) {
    const json& b = j["blowup"];
    if (!b.is_object()) schema("blowup", "expected an object");
    only_keys(b, "blowup", {"center", "weights", "epsilon"});
    if (!b.contains("center")) schema("blowup.center", "missing");
    BlowupInput bi;
    IntVec center = read_intvec(b["center"], "blowup.center", std::nullopt);
    if (center.empty()) schema("blowup.center", "empty");
    std::set<int> seen;
    for (std::size_t i = 0; i < center.size(); ++i) {
      const std::string key = "blowup.center[" + std::to_string(i) + "]";
      if (center[i] < 0 || center[i] >= static_cast<long>(m)) schema(key, "index out of range");
      int c = static_cast<int>(center[i].get_si());
      if (!seen.insert(c).second) schema(key, "repeated index");
      bi.center.push_back(c);
    }
    if (b.contains("weights")) {
      bi.weights = read_intvec(b["weights"], "blowup.weights", center.size());
      for (std::size_t i = 0; i < bi.weights->size(); ++i)
        if ((*bi.weights)[i] <= 0) schema("blowup.weights[" + std::to_string(i) + "]", "must be positive");
    }
    if (b.contains("epsilon")) {
      bi.epsilon = read_rational(b["epsilon"], "blowup.epsilon");
      if (*bi.epsilon <= 0) schema("blowup.epsilon", "must be positive");
    }
    doc.blowup = std::move(bi);
  }

  if (j.contains("request")) {
    const json& rq = j["request"];
    if (!rq.is_string()) schema("request", "expected a string");
    std::string s = rq.get<std::string>();
    if (s == "validate") doc.request = Request::Validate;
    else if (s == "fan") doc.request = Request::Fan;
    else if (s == "cohomology") doc.request = Request::Cohomology;
    else if (s == "transition") doc.request = Request::Transition;
    else schema("request", "unknown request '" + s + "'");
  }

  if (j.contains("options")) {
    const json& o = j["options"];
    if (!o.is_object()) schema("options", "expected an object");
    only_keys(o, "options", {"narrow", "sectors"});
    if (o.contains("narrow")) doc.narrow = read_bool(o["narrow"], "options.narrow");
    if (o.contains("sectors")) doc.sectors = read_bool(o["sectors"], "options.sectors");
  }
  return doc;
}

namespace {

json input_json(const InputDocument& doc) {
  json j;
  j["torus_rank"] = doc.torus_rank;
  json chars = json::array();
  for (const auto& c : doc.characters) chars.push_back(jintvec(c));
  j["characters"] = chars;
  j["stability"] = jqvec(doc.stability);
  if (doc.divisor) j["divisor"] = jintvec(*doc.divisor);
  if (doc.blowup) {
    json b;
    b["center"] = doc.blowup->center;
    if (doc.blowup->weights) b["weights"] = jintvec(*doc.blowup->weights);
    if (doc.blowup->epsilon) b["epsilon"] = jq(*doc.blowup->epsilon);
    j["blowup"] = b;
  }
  j["request"] = std::string(to_string(doc.request));
  j["options"] = {{"narrow", doc.narrow}, {"sectors", doc.sectors}};
  return j;
}

}  // namespace

std::string serialize_input(const InputDocument& doc) { return input_json(doc).dump(2) + "\n"; }

GitPresentation to_presentation(const InputDocument& doc) {
  GitPresentation p;
  p.r = doc.torus_rank;
  p.characters = doc.characters;
  p.omega = doc.stability;
  p.check_shape();
  return p;
}

TransitionSpec to_spec(const InputDocument& doc) {
  if (!doc.divisor) schema("divisor", "required for a transition");
  if (!doc.blowup) schema("blowup", "required for a transition");
  TransitionSpec s;
  s.base = to_presentation(doc);
  s.a = *doc.divisor;
  s.center = doc.blowup->center;
  if (doc.blowup->weights) s.weights = *doc.blowup->weights;
  s.epsilon = doc.blowup->epsilon;
  return s;
}

// ---- presets

namespace {

long param(const std::map<std::string, long>& params, const std::string& key, long fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void only_params(const std::string& name, const std::map<std::string, long>& params,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) schema("param " + k, "not a parameter of " + name);
  }
}

// one projective factor: a_i = 1 on the first min(d, m) coordinates, the rest on the last
void hypersurface_degree(IntVec& a, int offset, long m, long d) {
  for (long i = 0; i < std::min(d, m); ++i) a[offset + i] = 1;
  a[offset + m - 1] += d - std::min(d, m);
}

InputDocument proj_hypersurface(long m, long k, long d) {
  if (m < 2 || m > 20) schema("param m", "must lie in 2..20");
  if (k < 1 || k >= m) schema("param k", "must lie in 1..m-1");
  if (d < 1) schema("param d", "must be at least 1");
  InputDocument doc;
  doc.torus_rank = 1;
  doc.characters.assign(m, IntVec{1});
  doc.stability = {1};
  IntVec a(m, 0);
  hypersurface_degree(a, 0, m, d);
  doc.divisor = a;
  BlowupInput b;
  for (int i = 0; i < k; ++i) b.center.push_back(i);
  doc.blowup = b;
  doc.request = Request::Transition;
  return doc;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"cubic-transition", "product-proj", "proj-hypersurface", "quintic-conifold", "weighted-p11122-8"};
}

InputDocument preset(const std::string& name, const std::map<std::string, long>& params) {
  if (name == "quintic-conifold") {
    only_params(name, params, {});
    return proj_hypersurface(5, 2, 5);
  }
  if (name == "cubic-transition") {
    only_params(name, params, {});
    return proj_hypersurface(5, 4, 5);
  }
  if (name == "proj-hypersurface") {
    only_params(name, params, {"m", "k", "d"});
    return proj_hypersurface(param(params, "m", 5), param(params, "k", 2), param(params, "d", 5));
  }
  if (name == "product-proj") {
    only_params(name, params, {"m1", "m2", "k1", "k2", "d1", "d2"});
    long m1 = param(params, "m1", 3), m2 = param(params, "m2", 3);
    long k1 = param(params, "k1", 1), k2 = param(params, "k2", 1);
    long d1 = param(params, "d1", 3), d2 = param(params, "d2", 3);
    if (m1 < 2 || m2 < 2 || m1 + m2 > 20) schema("param m1", "factors need 2..18 coordinates each");
    if (k1 < 0 || k1 >= m1) schema("param k1", "must lie in 0..m1-1");
    if (k2 < 0 || k2 >= m2) schema("param k2", "must lie in 0..m2-1");
    if (k1 + k2 == 0) schema("param k1", "center is empty");
    if (d1 < 0 || d2 < 0 || d1 + d2 == 0) schema("param d1", "degrees must be nonnegative, not both zero");
    InputDocument doc;
    doc.torus_rank = 2;
    for (long i = 0; i < m1; ++i) doc.characters.push_back(IntVec{1, 0});
    for (long i = 0; i < m2; ++i) doc.characters.push_back(IntVec{0, 1});
    doc.stability = {1, 1};
    IntVec a(m1 + m2, 0);
    if (d1 > 0) hypersurface_degree(a, 0, m1, d1);
    if (d2 > 0) hypersurface_degree(a, static_cast<int>(m1), m2, d2);
    doc.divisor = a;
    BlowupInput b;
    for (int i = 0; i < k1; ++i) b.center.push_back(i);
    for (int i = 0; i < k2; ++i) b.center.push_back(static_cast<int>(m1) + i);
    doc.blowup = b;
    doc.request = Request::Transition;
    return doc;
  }
  if (name == "weighted-p11122-8") {
    only_params(name, params, {});
    InputDocument doc;
    doc.torus_rank = 1;
    for (long c : {1, 1, 1, 2, 2, 1}) doc.characters.push_back(IntVec{c});
    doc.stability = {1};
    doc.divisor = IntVec{0, 0, 0, 0, 0, 8};
    doc.blowup = BlowupInput{{0, 1}, std::nullopt, std::nullopt};
    doc.request = Request::Transition;
    return doc;
  }
  throw Error(ErrorCode::UnknownPreset, "'" + name + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGeneratorSet:
    case ErrorCode::NotFiniteIndex:
    case ErrorCode::DimensionLimit:
    case ErrorCode::BijectionFailure:
    case ErrorCode::NonvanishingAboveCap:
    case ErrorCode::NoCommonWall:
      return 2;
    default:
      return 1;
  }
}

// ---- pipeline

RunResult run(const InputDocument& doc) {
  json rep;
  std::ostringstream text;
  json errors = json::array();
  std::vector<std::string> summary;
  std::vector<std::string> flags = {"indices are 0-based; labels are 1-based",
                                    "age = sum of fractional parts of D_i.nu; degree shift = 2 age",
                                    "sectors keyed by nu modulo the character lattice"};
  int exit_code = 0;
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    exit_code = std::max(exit_code, code);
    errors.push_back({{"code", kind}, {"message", message}});
    text << "error: " << kind << ": " << message << '\n';
  };

  rep["version"] = kVersion;
  rep["input"] = input_json(doc);
  text << kVersion << "\nrequest: " << to_string(doc.request) << '\n';

  auto pipeline = [&] {
    GitPresentation p = to_presentation(doc);
    ValidationReport v = validate(p);
    rep["anticones"] = jvalidation(v);
    text << "anticones: " << v.family.minimal.size() << " minimal";
    for (Mask s : v.family.minimal) text << ' ' << human_cone(p, s);
    text << "\nvalidation: " << (v.ok() ? "ok" : "FAILED") << '\n';
    for (const auto& f : v.failures) text << "  " << f << '\n';
    if (!v.ok()) {
      for (const auto& f : v.failures) fail(1, "ValidationFailed", f);
      return;
    }
    summary.push_back("validation ok");

    if (doc.request >= Request::Fan) {
      StackyFan fan = build_fan(p, v.family);
      rep["fan"] = jfan(fan);
      text << "fan: rank " << fan.n << ", " << fan.max_cones.size() << " maximal cones";
      if (!fan.torsion.empty()) text << ", torsion " << to_string(to_qvec(fan.torsion));
      text << "\n";
      for (Mask c : fan.max_cones) text << "  " << human_cone(p, c) << '\n';
      if (fan.extended) text << "  extended " << human_cone(p, fan.extended) << '\n';
      summary.push_back("fan: " + std::to_string(fan.max_cones.size()) + " maximal cones");
    }

    if (doc.request >= Request::Cohomology) {
      text << "cohomology:\n";
      json coh;
      coh["X"] = jcohomology(p, {p.m() - 1}, doc.narrow, doc.sectors, text, "X");
      if (doc.divisor && doc.blowup) {
        TransitionSpec spec = to_spec(doc);
        HatPresentation hat = blowup_presentation(spec);
        TotalSpaces ts = total_space_presentations(spec, hat);
        const int m = spec.m();
        coh["T"] = jcohomology(ts.t, {m - 1}, doc.narrow, doc.sectors, text, "T");
        coh["T-bar"] = jcohomology(ts.tbar, {m - 1, m}, doc.narrow, doc.sectors, text, "T-bar");
      }
      rep["cohomology"] = coh;
    }

    if (doc.request >= Request::Transition) {
      TransitionSpec spec = to_spec(doc);
      TransitionReport tr = transition_report(spec);
      const HatPresentation& h = tr.hat;
      json hc = json::array();
      for (const auto& c : h.characters) hc.push_back(jintvec(c));
      json vals;
      for (const auto& [name, vr] : tr.validations) vals[name] = jvalidation(vr);
      rep["blowup"] = {{"characters", hc},
                       {"f", jintvec(h.f)},
                       {"labels", h.labels},
                       {"epsilon", jq(h.epsilon)},
                       {"epsilon_from_user", h.epsilon_from_user},
                       {"omega_plus", jqvec(h.omega_plus)},
                       {"omega_minus", jqvec(h.omega_minus)},
                       {"dtilde", jintvec(dtilde_coefficients(spec))},
                       {"permutation", tr.permutation},
                       {"checks", jchecks(tr.blowup_checks)},
                       {"support", {{"D", jsupport(tr.support_d)},
                                    {"D~", jsupport(tr.support_dtilde)}}},
                       {"crepancy", {{"ok", tr.crepancy.ok},
                                     {"dtilde", jintvec(tr.crepancy.dtilde)},
                                     {"pullback_d", jintvec(tr.crepancy.pullback_d)},
                                     {"pullback_k", jintvec(tr.crepancy.pullback_k)},
                                     {"mismatch", jqvec(tr.crepancy.mismatch)},
                                     {"detail", tr.crepancy.detail}}},
                       {"sections", {{"delta_d_points", tr.delta_d_points},
                                     {"delta_dtilde_points", tr.delta_dtilde_points},
                                     {"filter_survivors", tr.filter.survivors.size()},
                                     {"filter_agrees_with_tilde", tr.filter.agrees_with_tilde},
                                     {"filter_matches_direct", tr.filter_matches_direct}}}};
      TotalSpaces ts = total_space_presentations(spec, h);
      rep["total_spaces"] = {{"T", jpresentation(ts.t)},
                             {"T-bar", jpresentation(ts.tbar)},
                             {"T~", jpresentation(ts.ttilde)},
                             {"validations", vals},
                             {"checks", jchecks(tr.total_space_checks)}};
      rep["wall_chart"] = {{"T-bar/T~", jwall(tr.wall)}, {"X/X~", jwall(tr.blowup_wall)}};
      rep["conditions"] = jconditions(tr.conditions);
      for (const auto& f : tr.flags)
        if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);

      text << "blowup: epsilon " << to_string(h.epsilon) << ", D~ e-coefficient "
           << to_string(dtilde_coefficients(spec).back()) << ", D^_f = " << to_string(to_qvec(h.f)) << '\n';
      text << "  D nef " << yes(tr.support_d.nef()) << ", D~ nef " << yes(tr.support_dtilde.nef()) << ", D~ Cartier "
           << yes(tr.support_dtilde.cartier) << '\n';
      text << "  crepant " << yes(tr.crepancy.ok) << '\n';
      text << "  sections: " << tr.delta_d_points << " of D, " << tr.filter.survivors.size() << " survive, "
           << tr.delta_dtilde_points << " of D~\n";
      for (const auto& c : tr.blowup_checks) text << "  " << (c.pass ? "pass " : "FAIL ") << c.name << '\n';
      text << "total spaces:\n";
      for (const auto& c : tr.total_space_checks) text << "  " << (c.pass ? "pass " : "FAIL ") << c.name << '\n';
      text << "wall chart T-bar/T~: e = " << to_string(to_qvec(tr.wall.e)) << ", sum " << to_string(tr.wall.pairing_sum)
           << ", c = " << to_string(tr.wall.frak_c) << '\n';
      text << "wall chart X/X~: e = " << to_string(to_qvec(tr.blowup_wall.e)) << ", sum "
           << to_string(tr.blowup_wall.pairing_sum) << '\n';
      for (const auto& w : tr.blowup_wall.warnings) text << "  warning: " << w << '\n';
      text << "conditions: c1 " << yes(tr.conditions.c1) << ", c2 " << yes(tr.conditions.c2) << '\n';
      for (const auto& s : tr.conditions.sectors) {
        text << "  sector nu=" << to_string(s.nu) << ": injective " << yes(s.injective) << ", surjective "
             << yes(s.surjective) << ", c2 " << yes(s.c2) << '\n';
        if (!s.kernel_witness.empty()) text << "    kernel witness " << to_string(s.kernel_witness, s.names) << '\n';
        if (!s.c2_witness.empty()) text << "    c2 witness " << to_string(s.c2_witness, s.names) << '\n';
      }

      summary.push_back(std::string("c1 = ") + yes(tr.conditions.c1));
      summary.push_back(std::string("c2 = ") + yes(tr.conditions.c2));
      summary.push_back(std::string("crepant = ") + yes(tr.crepancy.ok));
      summary.push_back(std::string("D~ nef = ") + yes(tr.support_dtilde.nef()));
      if (!tr.crepancy.ok) fail(1, "StructuralCheck", "crepancy: " + tr.crepancy.detail);
      for (const auto* group : {&tr.blowup_checks, &tr.total_space_checks})
        for (const auto& c : *group)
          if (!c.pass) fail(1, "StructuralCheck", c.name + ": " + c.detail);
    }
  };
  try {
    pipeline();
  } catch (const Error& e) {
    fail(exit_code_for(e.code()), std::string(to_string(e.code())), e.detail());
  } catch (const std::exception& e) {
    fail(2, "InternalError", e.what());
  }

  rep["convention_flags"] = flags;
  rep["verdict"] = {{"exit_code", exit_code},
                    {"status", exit_code == 0 ? "ok" : exit_code == 1 ? "validation_failure" : "internal_error"},
                    {"errors", errors},
                    {"summary", summary}};
  text << "verdict: " << (exit_code == 0 ? "ok" : exit_code == 1 ? "validation failure" : "internal error")
       << " (exit " << exit_code << ")\n";
  return RunResult{exit_code, rep.dump(2) + "\n", text.str()};
}

}  // namespace extrans
