#include "lefmod/cli.hpp"

#include "lefmod/decomp.hpp"
#include "lefmod/relative.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

namespace lefmod::cli {

using json = nlohmann::json;

const char* version() { return LEFMOD_VERSION; }

namespace {

// ---- parsing helpers

struct Ctx {
  std::string source;
  [[noreturn]] void fail(const std::string& path, const std::string& why) const {
    throw InputError(source + ": at " + (path.empty() ? "/" : path) + ": " + why);
  }
};

const json& field(const Ctx& c, const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) c.fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) c.fail(path, "missing field '" + key + "'");
  return *it;
}

Rat rat_of(const Ctx& c, const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rat(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    c.fail(path, e.what());
  }
  c.fail(path, "expected a rational as \"p/q\" or an integer");
}

Vec vec_of(const Ctx& c, const json& j, const std::string& path, std::optional<std::size_t> len = std::nullopt) {
  if (!j.is_array()) c.fail(path, "expected an array of rationals");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_of(c, j[i], path + "/" + std::to_string(i)));
  if (len && v.size() != *len)
    c.fail(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(v.size()));
  return v;
}

Mat mat_of(const Ctx& c, const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) c.fail(path, "expected a matrix as an array of rows");
  if (j.size() != rows) c.fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vec row = vec_of(c, j[r], path + "/" + std::to_string(r), cols);
    for (std::size_t k = 0; k < cols; ++k) m(r, k) = row[k];
  }
  return m;
}

std::size_t count_of(const Ctx& c, const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    c.fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

// degree-one element as a vector or an expression in the labels
Vec degree_one(const Ctx& c, const GradedAlgebra& A, const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_degree_one(A, j.get<std::string>());
    } catch (const std::exception& e) {
      c.fail(path, e.what());
    }
  }
  return vec_of(c, j, path, A.dim(1));
}

std::vector<Vec> degree_one_list(const Ctx& c, const GradedAlgebra& A, const json& j, const std::string& path) {
  if (!j.is_array()) c.fail(path, "expected an array");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(degree_one(c, A, j[i], path + "/" + std::to_string(i)));
  return out;
}

const char* style_name(SampleStyle s) {
  switch (s) {
    case SampleStyle::generator_sums: return "generator_sums";
    case SampleStyle::lattice: return "lattice";
    case SampleStyle::relative: return "relative";
  }
  return "?";
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_string(x));
  return a;
}

json mat_json(const Mat& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
  return a;
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

template <class T>
std::string seq_text(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void parse_module(const Ctx& c, const json& j, Instance& inst) {
  inst.kind = Kind::Module;
  const json& alg = field(c, j, "", "algebra");
  const json& labels = field(c, alg, "/algebra", "labels");
  if (!labels.is_array() || labels.empty()) c.fail("/algebra/labels", "expected a nonempty array of label lists");
  AlgebraSpec& spec = inst.algebra;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const json& lk = labels[k];
    std::string p = "/algebra/labels/" + std::to_string(k);
    if (!lk.is_array()) c.fail(p, "expected an array of labels");
    spec.dims.push_back(lk.size());
    for (std::size_t i = 0; i < lk.size(); ++i) {
      if (!lk[i].is_string()) c.fail(p + "/" + std::to_string(i), "expected a string");
      std::string name = lk[i].get<std::string>();
      if (std::find(spec.labels.begin(), spec.labels.end(), name) != spec.labels.end())
        c.fail(p + "/" + std::to_string(i), "duplicate label '" + name + "'");
      spec.labels.push_back(name);
    }
  }
  auto index = [&](const json& x, const std::string& p) -> std::size_t {
    if (!x.is_string()) c.fail(p, "expected a label");
    auto it = std::find(spec.labels.begin(), spec.labels.end(), x.get<std::string>());
    if (it == spec.labels.end()) c.fail(p, "unknown label '" + x.get<std::string>() + "'");
    return static_cast<std::size_t>(it - spec.labels.begin());
  };
  std::vector<int> deg_of;
  for (std::size_t k = 0; k < spec.dims.size(); ++k)
    for (std::size_t i = 0; i < spec.dims[k]; ++i) deg_of.push_back(static_cast<int>(k));
  if (spec.dims[0] == 0) c.fail("/algebra/labels/0", "degree zero is empty");
  spec.unit = unit_vector(spec.dims[0], 0);
  if (alg.contains("unit")) spec.unit = vec_of(c, alg["unit"], "/algebra/unit", spec.dims[0]);
  const int top = static_cast<int>(spec.dims.size()) - 1;
  if (alg.contains("products")) {
    const json& pr = alg["products"];
    if (!pr.is_array()) c.fail("/algebra/products", "expected an array of [label, label, coordinates]");
    for (std::size_t t = 0; t < pr.size(); ++t) {
      std::string p = "/algebra/products/" + std::to_string(t);
      if (!pr[t].is_array() || pr[t].size() != 3) c.fail(p, "expected [label, label, coordinates]");
      std::size_t a = index(pr[t][0], p + "/0"), b = index(pr[t][1], p + "/1");
      int k = deg_of[a] + deg_of[b];
      if (k > top) c.fail(p, "product lands above the top degree");
      Vec v = vec_of(c, pr[t][2], p + "/2", spec.dims[k]);
      spec.products[{a, b}] = v;
      spec.products.emplace(std::make_pair(b, a), v);
    }
  }
  // the unit multiplies as expected when it is a basis vector
  std::size_t u = 0;
  while (u < spec.unit.size() && spec.unit[u] == 0) ++u;
  const bool unit_basis = u < spec.unit.size() && spec.unit == unit_vector(spec.dims[0], u);
  if (unit_basis)
    for (std::size_t g = 0; g < spec.labels.size(); ++g) {
      Vec e = unit_vector(spec.dims[deg_of[g]], g - [&] {
        std::size_t off = 0;
        for (int k = 0; k < deg_of[g]; ++k) off += spec.dims[k];
        return off;
      }());
      spec.products.emplace(std::make_pair(u, g), e);
      spec.products.emplace(std::make_pair(g, u), e);
    }
  AlgebraPtr A;
  try {
    A = std::make_shared<GradedAlgebra>(GradedAlgebra::make(spec));
  } catch (const std::exception& e) {
    c.fail("/algebra", std::string("invalid algebra: ") + e.what());
  }

  const json& mod = field(c, j, "", "module");
  if (mod.is_string()) {
    if (mod.get<std::string>() != "regular") c.fail("/module", "expected \"regular\" or an object");
    inst.regular = true;
    const json& form = field(c, j, "", "form");
    if (!form.is_string() || form.get<std::string>() != "deg") c.fail("/form", "a regular module takes the form \"deg\"");
    inst.deg = vec_of(c, field(c, j, "", "deg"), "/deg", A->dim(top));
  } else {
    const json& dims = field(c, mod, "/module", "dims");
    if (!dims.is_array() || dims.empty()) c.fail("/module/dims", "expected a nonempty array");
    for (std::size_t i = 0; i < dims.size(); ++i)
      inst.module_dims.push_back(count_of(c, dims[i], "/module/dims/" + std::to_string(i)));
    const int d = static_cast<int>(inst.module_dims.size()) - 1;
    auto mdim = [&](int i) -> std::size_t { return i < 0 || i > d ? 0 : inst.module_dims[i]; };
    const json& act = mod.contains("action") ? mod["action"] : json::object();
    if (!act.is_object()) c.fail("/module/action", "expected an object keyed by label");
    for (auto it = act.begin(); it != act.end(); ++it) index(json(it.key()), "/module/action/" + it.key());
    inst.action.assign(spec.labels.size(), {});
    for (std::size_t g = 0; g < spec.labels.size(); ++g) {
      const std::string& name = spec.labels[g];
      std::string p = "/module/action/" + name;
      int s = deg_of[g];
      std::vector<Mat> per;
      bool given = act.contains(name);
      if (given && (!act[name].is_array() || static_cast<int>(act[name].size()) != std::max(0, d - s + 1)))
        c.fail(p, "expected one matrix per degree i with i + " + std::to_string(s) + " <= " + std::to_string(d));
      for (int i = 0; i <= d; ++i) {
        if (i + s > d) {
          per.push_back(Mat(0, mdim(i)));
        } else if (given) {
          per.push_back(mat_of(c, act[name][i], p + "/" + std::to_string(i), mdim(i + s), mdim(i)));
        } else if (unit_basis && g == u) {
          per.push_back(Mat::identity(mdim(i)));
        } else {
          per.push_back(Mat(mdim(i + s), mdim(i)));
        }
      }
      inst.action[g] = per;
    }
    const json& form = field(c, j, "", "form");
    const json& blocks = field(c, form, "/form", "blocks");
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != d + 1)
      c.fail("/form/blocks", "expected " + std::to_string(d + 1) + " blocks");
    for (int i = 0; i <= d; ++i)
      inst.form_blocks.push_back(mat_of(c, blocks[i], "/form/blocks/" + std::to_string(i), mdim(i), mdim(d - i)));
  }
  inst.cone = degree_one_list(c, *A, field(c, j, "", "cone"), "/cone");
  if (inst.cone.empty()) c.fail("/cone", "the cone needs at least one generator");
}

void parse_common(const Ctx& c, const json& j, Instance& inst, const GradedAlgebra* A) {
  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    if (!s.is_object()) c.fail("/sampling", "expected an object");
    if (s.contains("count")) inst.samples = count_of(c, s["count"], "/sampling/count");
    if (s.contains("style")) {
      std::string st = s["style"].is_string() ? s["style"].get<std::string>() : "";
      if (st == "generator_sums") inst.style = SampleStyle::generator_sums;
      else if (st == "lattice") inst.style = SampleStyle::lattice;
      else if (st == "relative") inst.style = SampleStyle::relative;
      else c.fail("/sampling/style", "expected generator_sums, lattice or relative");
    }
  }
  if (j.contains("subalgebra")) {
    if (!A) c.fail("/subalgebra", "not available for this kind");
    const json& s = j["subalgebra"];
    auto gens = degree_one_list(c, *A, field(c, s, "/subalgebra", "gens1"), "/subalgebra/gens1");
    if (gens.empty()) c.fail("/subalgebra/gens1", "needs at least one generator");
    auto cone = s.contains("cone") ? degree_one_list(c, *A, s["cone"], "/subalgebra/cone") : gens;
    inst.subalgebra = std::make_pair(gens, cone);
  }
}

}  // namespace

// ---- instances

Instance parse_instance(const std::string& text, const std::string& source) {
  Ctx c{source};
  std::size_t first = text.find_first_not_of(" \t\r\n");
  Instance inst;
  if (first == std::string::npos) c.fail("", "empty input");
  if (text[first] != '{') {
    inst.kind = Kind::Matroid;
    try {
      inst.matroid = parse_bases_text(text);
    } catch (const std::exception& e) {
      throw InputError(source + ": " + e.what());
    }
    return inst;
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  static const std::vector<std::string> known = {"field", "fixture", "kind", "algebra", "module", "form", "deg",
                                                 "cone", "subalgebra", "sampling", "matroid", "apolar"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) c.fail("/" + it.key(), "unknown field");
  if (!j.contains("field") || j["field"] != "Q") c.fail("/field", "the field marker must be \"Q\"");
  std::string kind = j.contains("kind") ? (j["kind"].is_string() ? j["kind"].get<std::string>() : "?")
                                        : (j.contains("fixture") ? "fixture" : "module");
  if (kind == "fixture") {
    const json& f = field(c, j, "", "fixture");
    if (!f.is_string()) c.fail("/fixture", "expected a fixture name");
    inst.fixture = f.get<std::string>();
    const auto& names = fixture_names();
    if (std::find(names.begin(), names.end(), inst.fixture) == names.end())
      c.fail("/fixture", "unknown fixture '" + inst.fixture + "'");
    Fixture fx = make_fixture(inst.fixture);
    parse_common(c, j, inst, fx.MF.M.algebra().get());
  } else if (kind == "module") {
    parse_module(c, j, inst);
    parse_common(c, j, inst, build_fixture(inst).MF.M.algebra().get());
  } else if (kind == "matroid") {
    inst.kind = Kind::Matroid;
    const json& m = field(c, j, "", "matroid");
    int n = static_cast<int>(count_of(c, field(c, m, "/matroid", "n"), "/matroid/n"));
    std::vector<std::vector<int>> bases;
    const json& bs = field(c, m, "/matroid", "bases");
    if (!bs.is_array()) c.fail("/matroid/bases", "expected an array of bases");
    for (std::size_t b = 0; b < bs.size(); ++b) {
      std::string p = "/matroid/bases/" + std::to_string(b);
      if (!bs[b].is_array()) c.fail(p, "expected an array of elements");
      std::vector<int> basis;
      for (std::size_t e = 0; e < bs[b].size(); ++e) {
        std::size_t x = count_of(c, bs[b][e], p + "/" + std::to_string(e));
        if (x < 1 || static_cast<int>(x) > n) c.fail(p + "/" + std::to_string(e), "element outside 1..n");
        basis.push_back(static_cast<int>(x) - 1);
      }
      bases.push_back(basis);
    }
    try {
      inst.matroid = Matroid::from_bases(n, bases);
    } catch (const std::exception& e) {
      c.fail("/matroid", e.what());
    }
    parse_common(c, j, inst, nullptr);
  } else if (kind == "apolar") {
    inst.kind = Kind::Apolar;
    const json& a = field(c, j, "", "apolar");
    inst.apolar_n = static_cast<int>(count_of(c, field(c, a, "/apolar", "n"), "/apolar/n"));
    inst.apolar_d = static_cast<int>(count_of(c, field(c, a, "/apolar", "d"), "/apolar/d"));
    if (inst.apolar_n == 0) c.fail("/apolar/n", "needs at least one variable");
    const json& ts = field(c, a, "/apolar", "terms");
    if (!ts.is_array()) c.fail("/apolar/terms", "expected an array of terms");
    std::map<std::vector<int>, Rat, std::greater<>> merged;
    for (std::size_t t = 0; t < ts.size(); ++t) {
      std::string p = "/apolar/terms/" + std::to_string(t);
      const json& e = field(c, ts[t], p, "exp");
      if (!e.is_array() || static_cast<int>(e.size()) != inst.apolar_n)
        c.fail(p + "/exp", "expected " + std::to_string(inst.apolar_n) + " exponents");
      std::vector<int> exp;
      int total = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        exp.push_back(static_cast<int>(count_of(c, e[i], p + "/exp/" + std::to_string(i))));
        total += exp.back();
      }
      if (total != inst.apolar_d) c.fail(p + "/exp", "term is not of degree " + std::to_string(inst.apolar_d));
      merged[exp] += rat_of(c, field(c, ts[t], p, "coef"), p + "/coef");
    }
    for (auto& [e, r] : merged)
      if (r != 0) inst.terms.push_back({e, r});
    if (inst.terms.empty()) c.fail("/apolar/terms", "the form is zero");
    parse_common(c, j, inst, build_fixture(inst).MF.M.algebra().get());
  } else {
    c.fail("/kind", "expected fixture, module, matroid or apolar");
  }
  return inst;
}

Instance load_instance(const std::string& target) {
  const auto& names = fixture_names();
  if (std::find(names.begin(), names.end(), target) != names.end()) {
    Instance inst;
    inst.fixture = target;
    return inst;
  }
  std::ifstream in(target, std::ios::binary);
  if (!in) throw InputError("'" + target + "' is neither a fixture nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), target);
}

std::string serialize(const Instance& inst) {
  json j;
  j["field"] = "Q";
  switch (inst.kind) {
    case Kind::Fixture:
      j["kind"] = "fixture";
      j["fixture"] = inst.fixture;
      break;
    case Kind::Module: {
      j["kind"] = "module";
      const AlgebraSpec& s = inst.algebra;
      json labels = json::array();
      std::size_t g = 0;
      for (auto n : s.dims) {
        json lk = json::array();
        for (std::size_t i = 0; i < n; ++i) lk.push_back(s.labels[g++]);
        labels.push_back(lk);
      }
      json prods = json::array();
      for (auto& [pq, v] : s.products)
        if (pq.first <= pq.second && !is_zero(v)) prods.push_back({s.labels[pq.first], s.labels[pq.second], vec_json(v)});
      j["algebra"] = {{"labels", labels}, {"products", prods}, {"unit", vec_json(s.unit)}};
      if (inst.regular) {
        j["module"] = "regular";
        j["form"] = "deg";
        j["deg"] = vec_json(inst.deg);
      } else {
        json act = json::object();
        for (std::size_t a = 0; a < inst.action.size(); ++a) {
          json per = json::array();
          int top = static_cast<int>(inst.module_dims.size()) - 1;
          int deg = 0;
          for (std::size_t k = 0, off = 0; k < s.dims.size(); off += s.dims[k], ++k)
            if (a >= off && a < off + s.dims[k]) deg = static_cast<int>(k);
          bool nonzero = false;
          for (int i = 0; i + deg <= top; ++i) {
            per.push_back(mat_json(inst.action[a][i]));
            nonzero = nonzero || !inst.action[a][i].is_zero();
          }
          if (nonzero) act[s.labels[a]] = per;
        }
        j["module"] = {{"dims", inst.module_dims}, {"action", act}};
        json blocks = json::array();
        for (auto& b : inst.form_blocks) blocks.push_back(mat_json(b));
        j["form"] = {{"blocks", blocks}};
      }
      json cone = json::array();
      for (auto& v : inst.cone) cone.push_back(vec_json(v));
      j["cone"] = cone;
      break;
    }
    case Kind::Matroid: {
      j["kind"] = "matroid";
      const Matroid& m = *inst.matroid;
      std::vector<std::vector<int>> bases;
      for (ElemSet b : m.bases()) {
        std::vector<int> one;
        for (int e = 0; e < m.size(); ++e)
          if (b >> e & 1u) one.push_back(e + 1);
        bases.push_back(one);
      }
      std::sort(bases.begin(), bases.end());
      j["matroid"] = {{"n", m.size()}, {"bases", bases}};
      break;
    }
    case Kind::Apolar: {
      j["kind"] = "apolar";
      json terms = json::array();
      for (auto& t : inst.terms) terms.push_back({{"exp", t.exp}, {"coef", to_string(t.coef)}});
      j["apolar"] = {{"n", inst.apolar_n}, {"d", inst.apolar_d}, {"terms", terms}};
      break;
    }
  }
  if (inst.subalgebra) {
    json g = json::array(), c = json::array();
    for (auto& v : inst.subalgebra->first) g.push_back(vec_json(v));
    for (auto& v : inst.subalgebra->second) c.push_back(vec_json(v));
    j["subalgebra"] = {{"gens1", g}, {"cone", c}};
  }
  if (inst.samples || inst.style != SampleStyle::generator_sums) {
    json s = {{"style", style_name(inst.style)}};
    if (inst.samples) s["count"] = *inst.samples;
    j["sampling"] = s;
  }
  return j.dump(2) + "\n";
}

Fixture build_fixture(const Instance& inst) {
  switch (inst.kind) {
    case Kind::Fixture: return make_fixture(inst.fixture);
    case Kind::Matroid: return matroid_fixture("matroid", *inst.matroid);
    case Kind::Apolar: {
      try {
        return apolar_fixture("apolar", inst.terms, inst.apolar_n, inst.apolar_d);
      } catch (const std::exception& e) {
        throw InputError(std::string("invalid apolar form: ") + e.what());
      }
    }
    case Kind::Module: break;
  }
  try {
    auto A = std::make_shared<GradedAlgebra>(GradedAlgebra::make(inst.algebra));
    Fixture fx;
    fx.name = "instance";
    if (inst.regular) {
      fx.MF = regular_module(A, inst.deg);
    } else {
      fx.MF = {GradedModule(A, inst.module_dims, inst.action), {inst.form_blocks}};
      fx.MF.M.validate();
    }
    fx.MF.validate();
    fx.cone = Cone(A->dim(1), inst.cone);
    return fx;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

// ---- commands

namespace {

struct Context {
  Instance inst;
  Fixture fx;
  Subalgebra B;
  bool explicit_B = false;
  std::size_t samples = 5;
  std::string digest;
  const GradedAlgebra& A() const { return *fx.MF.M.algebra(); }
  bool regular() const {
    if (inst.kind == Kind::Fixture) return inst.fixture != "endC" && inst.fixture != "endH" && inst.fixture != "sqrt2";
    return inst.kind != Kind::Module || inst.regular;
  }
  Elem eta() const {
    Vec v(A().dim(1), 0);
    for (auto& g : fx.cone.gens) v = add(v, g);
    return {1, v};
  }
};

std::string witness_text(const Context& cx, int k, const Vec& w) {
  std::string s = vec_text(w);
  if (cx.regular()) s += " = " + cx.A().format({k, w});
  return s;
}

json check_json(const DegreeCheck& c) {
  json j = {{"k", c.k}, {"ok", c.ok}};
  if (c.witness) j["witness"] = vec_json(*c.witness);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

int cmd_check(const Context& cx, const Options& o, std::ostream& out, json& res) {
  ModuleWithForm MF = cx.fx.MF;
  std::vector<Vec> points;
  std::vector<std::string> labels;
  if (cx.explicit_B) MF = restrict_to(MF, cx.B);
  if (!o.ell.empty()) {
    Vec l;
    try {
      l = parse_degree_one(cx.A(), o.ell);
    } catch (const std::exception& e) {
      throw InputError(std::string("--ell: ") + e.what());
    }
    if (cx.explicit_B) {
      try {
        points.push_back(cx.B.restrict_elem({1, l}).v);
      } catch (const std::exception&) {
        throw InputError("--ell: element does not lie in B");
      }
    } else {
      points.push_back(l);
    }
  } else {
    Cone cone = cx.explicit_B ? local_cone(cx.B) : cx.fx.cone;
    SampleStyle st = cx.inst.style == SampleStyle::relative ? SampleStyle::generator_sums : cx.inst.style;
    points = sample_points(cone, st, cx.samples);
  }
  KahlerCertificate cert = check_kahler_package(MF, points, cx.fx.name);
  out << "Kahler package over " << (cx.explicit_B ? "B" : "A") << ", " << points.size() << " samples ("
      << cert.caveat << ")\n";
  bool pd = true;
  for (auto& c : cert.pd) pd = pd && c.ok;
  out << "PD: " << (pd ? "pass" : "FAIL") << "\n";
  for (auto& c : cert.pd)
    if (!c.ok) out << "  degree " << c.k << ": " << c.note << (c.witness ? ", witness " + witness_text(cx, c.k, *c.witness) : "") << "\n";
  json pts = json::array();
  for (std::size_t s = 0; s < cert.points.size(); ++s) {
    const PointCheck& p = cert.points[s];
    Elem inA = cx.explicit_B ? cx.B.include({1, p.ell}) : Elem{1, p.ell};
    std::string lt = cx.A().format(inA);
    out << "sample " << s << " l = " << lt << ": HL " << (p.hl_ok ? "pass" : "FAIL");
    if (p.hr.precondition_ok) out << ", HR " << (p.hr.ok ? "pass" : "FAIL");
    else out << ", HR not checked";
    out << "\n";
    json hl = json::array(), hr = json::array();
    for (auto& c : p.hl) {
      hl.push_back(check_json(c));
      if (!c.ok && c.witness) {
        int wk = c.witness->size() == MF.M.dim(c.k) ? c.k : MF.degree() - c.k;
        out << "  HL degree " << c.k << ": kernel witness " << witness_text(cx, wk, *c.witness) << "\n";
      } else if (!c.ok) {
        out << "  HL degree " << c.k << ": " << c.note << "\n";
      }
    }
    for (auto& c : p.hr.degrees) {
      json e = check_json(c);
      e["primitive_dim"] = c.primitive_dim;
      e["inertia"] = {c.inertia.plus, c.inertia.minus, c.inertia.zero};
      hr.push_back(e);
      if (p.hr.precondition_ok)
        out << "  HR degree " << c.k << ": primitives " << c.primitive_dim << ", inertia (" << c.inertia.plus << ","
            << c.inertia.minus << "," << c.inertia.zero << ")"
            << (c.ok ? "" : ", witness " + (c.witness ? witness_text(cx, c.k, *c.witness) : std::string("none"))) << "\n";
    }
    pts.push_back({{"ell", vec_json(inA.v)}, {"ell_text", lt}, {"hl_ok", p.hl_ok}, {"hl", hl},
                   {"hr_precondition_ok", p.hr.precondition_ok}, {"hr_ok", p.hr.ok}, {"hr", hr}});
  }
  json pdj = json::array();
  for (auto& c : cert.pd) pdj.push_back(check_json(c));
  res = {{"pd", pdj}, {"points", pts}, {"ok", cert.ok()}, {"caveat", cert.caveat}};
  if (!cert.ok()) res["first_failure"] = cert.first_failure();
  out << "result: " << (cert.ok() ? "pass" : "FAIL (" + cert.first_failure() + ")") << "\n";
  return cert.ok() ? 0 : 1;
}

std::vector<Vec> local_samples(const Context& cx) {
  SampleStyle st = cx.inst.style == SampleStyle::relative ? SampleStyle::generator_sums : cx.inst.style;
  return sample_points(local_cone(cx.B), st, cx.samples);
}

int cmd_decompose(const Context& cx, const Options& o, std::ostream& out, json& res) {
  GradedModule M = restrict_to(cx.fx.MF.M, cx.B);
  auto samples = local_samples(cx);
  DecompositionReport r = decompose(M, o.seed, samples);
  bool ok = true;
  out << "summands: " << r.pieces.size() << " in " << r.classes.size() << " isomorphism classes\n";
  out << "class  dims        k  m  D       eps  form\n";
  json classes = json::array();
  for (std::size_t a = 0; a < r.classes.size(); ++a) {
    const SummandClass& c = r.classes[a];
    std::string eps = c.epsilon ? (*c.epsilon > 0 ? "+1" : "-1") : "?";
    std::string form = c.form.solution_dim == 1 ? "unique" : "solution dim " + std::to_string(c.form.solution_dim);
    for (auto& [k, m] : c.multiplicity) {
      std::ostringstream row;
      row << std::left << std::setw(7) << ("N" + std::to_string(a)) << std::setw(12) << seq_text(c.dims) << std::setw(3)
          << k << std::setw(3) << m << std::setw(8) << (c.division.text() + " ") << std::setw(5) << (eps + " ") << form;
      out << row.str() << "\n";
    }
    json mult = json::object();
    for (auto& [k, m] : c.multiplicity) mult[std::to_string(k)] = m;
    json cj = {{"index", a}, {"dims", c.dims}, {"d_alpha", c.d_alpha}, {"division", c.division.text()},
               {"form_solution_dim", c.form.solution_dim}, {"multiplicity", mult},
               {"middle_socle_free", c.middle_socle_free}};
    if (c.epsilon) cj["epsilon"] = *c.epsilon;
    if (c.form.Q) {
      json blocks = json::array();
      for (auto& b : c.form.Q->blocks) blocks.push_back(mat_json(b));
      cj["form"] = blocks;
    }
    classes.push_back(cj);
    ok = ok && c.middle_socle_free;
  }
  json pieces = json::array();
  for (auto& p : r.pieces) {
    json incl = json::array();
    for (auto& m : p.incl) incl.push_back(mat_json(m));
    pieces.push_back({{"class", p.cls}, {"shift", p.shift}, {"dims_in_M", p.dims_in_M()}, {"span", incl}});
    if (p.dims_in_M() == std::vector<std::size_t>(p.dims_in_M().size(), 0)) continue;
    std::size_t total = 0;
    for (auto x : p.dims_in_M()) total += x;
    if (total == 1)
      for (int i = 0; i < static_cast<int>(p.incl.size()); ++i)
        if (p.incl[i].cols() == 1)
          out << "one-dimensional summand in degree " << i << " spanned by "
              << witness_text(cx, i, p.incl[i].col(0)) << "\n";
  }
  const int d = M.degree();
  auto hom = hom_vanishing(r, d);
  out << "Hom(N_a, N_b[-k]) over Q for k = " << -d << ".." << d << ":\n";
  json homj = json::array();
  bool hom_ok = true;
  for (std::size_t a = 0; a < r.classes.size(); ++a)
    for (std::size_t b = 0; b < r.classes.size(); ++b) {
      out << "  N" << a << " -> N" << b << ":";
      for (auto& h : hom)
        if (h.alpha == a && h.beta == b) {
          out << " " << h.dim << (h.ok() ? "" : "!");
          hom_ok = hom_ok && h.ok();
          json e = {{"alpha", a}, {"beta", b}, {"k", h.k}, {"dim", h.dim}};
          if (h.predicted) e["predicted"] = *h.predicted;
          homj.push_back(e);
        }
      out << "\n";
    }
  out << "Hom vanishing: " << (hom_ok ? "pass" : "FAIL") << "\n";
  ok = ok && hom_ok;
  auto G = build_gr(cx.fx.MF, cx.B, cone_center(cx.B));
  VTable V = multiplicity_spaces(r, G, cx.eta());
  json vj = json::array();
  for (std::size_t a = 0; a < r.classes.size(); ++a) {
    bool match = true;
    for (auto& e : V.entries)
      if (e.alpha == a) match = match && e.matches_multiplicity;
    out << "V N" << a << ": dims over D " << seq_text(V.sequences[a]) << (V.symmetric[a] ? " symmetric" : " NOT symmetric")
        << (V.unimodal[a] ? " unimodal" : " NOT unimodal") << (V.raising_iso[a] ? " raising iso" : " raising NOT iso")
        << (match ? "" : " multiplicity mismatch") << "\n";
    vj.push_back({{"class", a}, {"sequence", V.sequences[a]}, {"symmetric", V.symmetric[a]},
                  {"unimodal", V.unimodal[a]}, {"raising_iso", V.raising_iso[a]}, {"matches_multiplicity", match}});
    ok = ok && V.symmetric[a] && V.unimodal[a] && V.raising_iso[a] && match;
  }
  json canon = json::array();
  for (auto& [dims, k, m] : r.canonical()) canon.push_back({{"dims", dims}, {"k", k}, {"m", m}});
  res = {{"classes", classes}, {"pieces", pieces}, {"canonical", canon}, {"hom", homj}, {"V", vj}, {"ok", ok}};
  out << "result: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_perverse(const Context& cx, std::ostream& out, json& res) {
  const ModuleWithForm& MF = cx.fx.MF;
  Elem ell = cone_center(cx.B);
  PerverseFiltration P = perverse_filtration(MF.M, ell);
  const int d = P.d;
  out << "l = " << cx.A().format(ell) << "\n";
  out << "P dims by level j = 0.." << 2 * d << ": " << seq_text(P.level_dims()) << "\n";
  json levels = json::array();
  for (int j = 0; j <= 2 * d; ++j) {
    std::vector<std::size_t> row;
    for (int i = 0; i <= d; ++i) row.push_back(P.at(j, i).dim());
    levels.push_back(row);
  }
  res = {{"level_dims", P.level_dims()}, {"P", levels}};
  if (P.trivial()) {
    out << "filtration trivial: P_" << d - 1 << " = 0 and P_" << d << " = M, so Gr = M\n";
    out << "result: pass\n";
    res["trivial"] = true;
    res["ok"] = true;
    return 0;
  }
  res["trivial"] = false;
  bool ok = true;
  auto G = build_gr(MF, cx.B, P);
  json rows = json::array();
  for (int j = 0; j <= 2 * d; ++j) {
    rows.push_back(G.row_dims(j));
    if (G.rows[j].module.total_dim() > 0) out << "Gr row j = " << j << ": " << seq_text(G.row_dims(j)) << "\n";
  }
  res["gr_rows"] = rows;
  out << "Gr checks: " << (G.checks.ok() ? "pass" : "FAIL") << "\n";
  for (auto& n : G.checks.notes) out << "  " << n << "\n";
  ok = ok && G.checks.ok();
  res["gr_checks_ok"] = G.checks.ok();

  std::vector<Vec> ells;
  for (auto& s : local_samples(cx)) ells.push_back(cx.B.include({1, s}).v);
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  if (ells.size() >= 2) {
    auto ind = check_ell_independence(MF.M, ells);
    out << "l-independence over " << ells.size() << " samples: " << (ind.equal ? "pass" : "FAIL, input likely not Lefschetz")
        << "\n";
    ok = ok && ind.equal;
    res["ell_independent"] = ind.equal;
  } else {
    out << "l-independence: skipped, fewer than two distinct samples\n";
  }

  Elem eta = cx.eta();
  auto hl = check_relative_hl(G, eta);
  out << "relative HL (eta = " << cx.A().format(eta) << "): " << (hl.ok ? "pass" : "FAIL") << "\n";
  json hlf = json::array();
  for (auto& f : hl.failures) {
    out << "  Gr^{" << f.i << "," << f.j << "}" << (f.cokernel ? " cokernel" : " kernel") << " witness "
        << vec_text(f.witness) << "\n";
    hlf.push_back({{"i", f.i}, {"j", f.j}, {"cokernel", f.cokernel}, {"witness", vec_json(f.witness)}});
  }
  res["relative_hl"] = {{"ok", hl.ok}, {"failures", hlf}};
  ok = ok && hl.ok;
  if (hl.ok) {
    auto prim = primitive_decomposition(G, eta);
    auto hr = check_relative_hr(G, prim);
    out << "primitive pieces:";
    json pj = json::array();
    for (auto& p : prim.pieces) {
      out << " (" << p.i << "," << p.j << "):" << p.space.dim();
      pj.push_back({{"i", p.i}, {"j", p.j}, {"dim", p.space.dim()}});
    }
    out << (prim.complete ? "" : " incomplete: " + prim.diagnostic) << "\n";
    out << "relative HR: " << (hr.ok ? "pass" : "FAIL") << "\n";
    json hrj = json::array();
    for (auto& p : hr.pieces) {
      json e = {{"i", p.i}, {"j", p.j}, {"inertia", {p.inertia.plus, p.inertia.minus, p.inertia.zero}}};
      if (p.witness) {
        e["witness"] = vec_json(*p.witness);
        out << "  piece (" << p.i << "," << p.j << ") witness " << vec_text(*p.witness) << "\n";
      }
      hrj.push_back(e);
    }
    res["primitive_pieces"] = pj;
    res["relative_hr"] = {{"ok", hr.ok}, {"pieces", hrj}};
    ok = ok && hr.ok && prim.complete;
    auto sig = signature_identity(G, prim);
    if (sig.applicable) {
      out << "signature identity: " << sig.a << " " << sig.b << " " << sig.c << (sig.ok() ? " pass" : " FAIL") << "\n";
      res["signature_identity"] = {{"a", sig.a}, {"b", sig.b}, {"c", sig.c}, {"ok", sig.ok()}};
      ok = ok && sig.ok();
    }
    auto R = compute_R(MF.M, P);
    out << "R dims: " << seq_text(R.dims()) << (R.closed ? "" : " (not closed)") << "\n";
    res["R_dims"] = R.dims();
    auto sp = deligne_splitting(G, eta, R);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "Deligne splitting: " << (sp.ok() ? "pass" : "FAIL") << " (invertible " << yn(sp.invertible)
        << ", filtration exact " << yn(sp.filtration_exact) << ", R-equivariant " << yn(sp.equivariant) << ")\n";
    res["splitting"] = {{"invertible", sp.invertible}, {"filtration_exact", sp.filtration_exact},
                        {"equivariant", sp.equivariant}};
    ok = ok && sp.ok() && R.closed;
  }
  res["ok"] = ok;
  out << "result: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_matroid(const Context& cx, std::ostream& out, json& res) {
  std::optional<Matroid> m = cx.inst.matroid;
  if (cx.inst.kind == Kind::Fixture) {
    if (cx.inst.fixture == "fano") m = Matroid::fano();
    else if (cx.inst.fixture == "u23") m = Matroid::uniform(2, 3);
  }
  if (!m) throw InputError("matroid needs a matroid instance, a bases list, fano or u23");
  FlatsLattice L = flats(*m);
  auto th = top_heavy(L);
  out << "matroid on " << m->size() << " elements of rank " << m->rank() << "\n";
  out << "flat counts: " << seq_text(L.counts()) << "\n";
  out << "top-heavy: " << (th.ok ? "pass" : "FAIL " + th.violation) << "\n";
  Fixture fx = matroid_fixture("matroid", *m);
  auto cert = check_kahler_package(fx.MF, fx.cone, cx.samples, "matroid");
  out << "Kahler package of the Mobius algebra: " << (cert.ok() ? "pass" : "FAIL (" + cert.first_failure() + ")")
      << " (" << cert.caveat << ")\n";
  bool ok = th.ok && cert.ok();
  res = {{"n", m->size()}, {"rank", m->rank()}, {"flat_counts", L.counts()}, {"top_heavy", th.ok},
         {"kahler_ok", cert.ok()}, {"ok", ok}};
  out << "result: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_apolar(const Context& cx, std::ostream& out, json& res) {
  std::vector<Term> terms = cx.inst.terms;
  int n = cx.inst.apolar_n, d = cx.inst.apolar_d;
  if (cx.inst.kind == Kind::Fixture) {
    if (cx.inst.fixture == "lorentz3") terms = lorentz_cubic(), n = 3, d = 3;
    else if (cx.inst.fixture == "indefinite2") terms = {{{2, 0}, 1}, {{0, 2}, -1}}, n = 2, d = 2;
  }
  if (terms.empty()) throw InputError("apolar needs an apolar instance, lorentz3 or indefinite2");
  CogeneratedAlgebra C = cogenerate(terms, n, d);
  auto cert = lorentz_check(C, cx.samples);
  out << "Hilbert function: " << seq_text(C.hilbert()) << "\n";
  out << "Kahler package: " << (cert.ok() ? "pass" : "FAIL (" + cert.first_failure() + ")") << " (" << cert.caveat
      << ")\n";
  json wit = nullptr;
  for (std::size_t s = 0; s < cert.points.size(); ++s) {
    const auto& p = cert.points[s];
    for (auto& c : p.hl)
      if (!c.ok && c.witness) {
        out << "  sample " << s << " l = " << vec_text(p.ell) << ": HL degree " << c.k << " kernel witness "
            << vec_text(*c.witness) << "\n";
        if (wit.is_null()) wit = vec_json(*c.witness);
      }
    for (auto& c : p.hr.degrees)
      if (!c.ok && c.witness) {
        out << "  sample " << s << " l = " << vec_text(p.ell) << ": HR degree " << c.k << " witness "
            << cx.fx.MF.M.algebra()->format({c.k, *c.witness}) << "\n";
        if (wit.is_null()) wit = vec_json(*c.witness);
      }
  }
  res = {{"hilbert", C.hilbert()}, {"ok", cert.ok()}};
  if (!cert.ok()) res["first_failure"] = cert.first_failure();
  if (!wit.is_null()) res["witness"] = wit;
  out << "result: " << (cert.ok() ? "pass" : "FAIL") << "\n";
  return cert.ok() ? 0 : 1;
}

}  // namespace

int run(const Options& o, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> commands = {"check", "decompose", "perverse", "matroid", "apolar", "canonical"};
  try {
    if (std::find(commands.begin(), commands.end(), o.command) == commands.end())
      throw InputError("unknown command '" + o.command + "'");
    Context cx;
    cx.inst = load_instance(o.target);
    std::string canon = serialize(cx.inst);
    if (o.command == "canonical") {
      out << canon;
      return 0;
    }
    cx.digest = sha256_hex(canon);
    cx.fx = build_fixture(cx.inst);
    cx.samples = o.samples.value_or(cx.inst.samples.value_or(5));
    if (cx.samples == 0) throw InputError("--samples must be positive");
    const AlgebraPtr& A = cx.fx.MF.M.algebra();
    if (!o.B.empty()) {
      try {
        cx.B = subalgebra_from_gens(A, parse_degree_one_list(*A, o.B));
      } catch (const std::exception& e) {
        throw InputError(std::string("--B: ") + e.what());
      }
      cx.explicit_B = true;
    } else if (cx.inst.subalgebra) {
      cx.B = subalgebra_generated(A, cx.inst.subalgebra->first, cx.inst.subalgebra->second);
      cx.explicit_B = true;
    } else {
      cx.B = full_subalgebra(cx.fx);
    }
    out << "lefmod " << version() << " " << o.command << " " << o.target << (o.B.empty() ? "" : " --B " + o.B)
        << "\ninput digest " << cx.digest << ", seed " << o.seed << "\n";
    constexpr const char* kClosure = "generators of B lie in the closure of the cone of A (not checked)";
    if (cx.explicit_B && o.command != "matroid" && o.command != "apolar") out << "assumption: " << kClosure << "\n";
    json res;
    int code = 0;
    if (o.command == "check") code = cmd_check(cx, o, out, res);
    else if (o.command == "decompose") code = cmd_decompose(cx, o, out, res);
    else if (o.command == "perverse") code = cmd_perverse(cx, out, res);
    else if (o.command == "matroid") code = cmd_matroid(cx, out, res);
    else code = cmd_apolar(cx, out, res);
    if (!o.json_out.empty()) {
      json report = {{"command", o.command}, {"target", o.target}, {"input_digest", cx.digest},
                     {"version", version()}, {"seed", o.seed}, {"samples", cx.samples}, {"results", res}};
      if (!o.B.empty()) report["B"] = o.B;
      if (cx.explicit_B) report["assumptions"] = {kClosure};
      if (!o.ell.empty()) report["ell"] = o.ell;
      std::ofstream f(o.json_out, std::ios::binary);
      if (!f) throw InputError("cannot write '" + o.json_out + "'");
      f << report.dump(2) << "\n";
    }
    return code;
  } catch (const InputError& e) {
    err << "input invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lefmod::cli
