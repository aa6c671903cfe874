#include "banachlab/catalog.hpp"

#include "banachlab/dd.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace banach {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("catalog " + where + ": " + what);
}

Rat rat_of(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) return Rat(j.get<double>());
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "expected a number or a rational string");
}

Cx scalar_of(const json& j, bool cplx, const std::string& where) {
  if (j.is_object()) {
    if (!cplx) fail(where, "complex entry on a real space");
    Rat re = j.contains("re") ? rat_of(j.at("re"), where) : Rat(0);
    Rat im = j.contains("im") ? rat_of(j.at("im"), where) : Rat(0);
    return Cx(re.get_d(), im.get_d());
  }
  return Cx(rat_of(j, where).get_d(), 0.0);
}

QVec qvec_entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty coordinate array");
  QVec v;
  v.reserve(j.size());
  for (const json& c : j) v.push_back(rat_of(c, where));
  return v;
}

// canonical form for exact facet-set comparison
std::vector<std::string> facet_keys(const std::vector<QVec>& fs) {
  std::vector<std::string> keys;
  keys.reserve(fs.size());
  for (const QVec& f : fs) {
    std::string k;
    for (const Rat& c : f) k += rat_str(c) + ";";
    keys.push_back(std::move(k));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

void check_polyhedral(const std::string& where, const std::vector<QVec>& verts,
                      const std::vector<QVec>* facets_given, int dim, const Config& cfg,
                      std::vector<std::string>& warnings) {
  if (facets_given) {
    for (const QVec& v : verts) {
      Rat mx(0);
      for (const QVec& f : *facets_given) {
        Rat a = abs(qdot(f, v));
        if (a > mx) mx = a;
      }
      if (mx != 1) {
        std::string coords;
        for (const Rat& c : v) coords += (coords.empty() ? "" : ",") + rat_str(c);
        fail(where, "vertex (" + coords + ") has norm " + rat_str(mx) +
                        " against the given facets, expected 1");
      }
    }
  }
  if (dim > cfg.poly_convert_max_dim) {
    warnings.push_back(where + ": polarity check skipped (dimension guardrail)");
    return;
  }
  std::vector<QVec> hull;
  try {
    hull = facets_of_hull(verts, dim);
  } catch (const std::exception& e) {
    fail(where, std::string("vertex set does not span a valid unit ball: ") + e.what());
  }
  for (const QVec& v : verts) {
    Rat mx(0);
    for (const QVec& f : hull) {
      Rat a = abs(qdot(f, v));
      if (a > mx) mx = a;
    }
    if (mx != 1) {
      std::string coords;
      for (const Rat& c : v) coords += (coords.empty() ? "" : ",") + rat_str(c);
      fail(where, "vertex (" + coords + ") lies strictly inside the unit ball (norm " +
                      rat_str(mx) + ")");
    }
  }
  if (facets_given && facet_keys(*facets_given) != facet_keys(hull))
    fail(where, "given facets are not the polar of the vertex set");
}

}  // namespace

SpacePtr Catalog::find_space(const std::string& label) const {
  for (const SpacePtr& s : spaces)
    if (s->label == label) return s;
  throw std::runtime_error("unknown label: " + label);
}

bool Catalog::has_space(const std::string& label) const {
  for (const SpacePtr& s : spaces)
    if (s->label == label) return true;
  return false;
}

const Operator* Catalog::find_operator(const std::string& label) const {
  for (const auto& [name, op] : operators)
    if (name == label) return &op;
  return nullptr;
}

const TensorElement* Catalog::find_tensor(const std::string& label) const {
  for (const auto& [name, t] : tensors)
    if (name == label) return &t;
  return nullptr;
}

Catalog parse_catalog_text(const std::string& text, const Config& cfg) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("catalog: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("catalog: top level must be an object");

  Catalog cat;
  std::set<std::string> labels;

  auto take_label = [&](const json& e, const std::string& where) {
    if (!e.contains("label") || !e.at("label").is_string() || e.at("label").empty())
      fail(where, "missing label");
    std::string l = e.at("label").get<std::string>();
    if (!labels.insert(l).second) fail(where + " (" + l + ")", "duplicate label");
    return l;
  };

  if (root.contains("spaces")) {
    const json& arr = root.at("spaces");
    if (!arr.is_array()) throw std::runtime_error("catalog: spaces must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& e = arr[i];
      std::string where = "spaces[" + std::to_string(i) + "]";
      std::string label = take_label(e, where);
      where += " (" + label + ")";
      std::string kind = e.value("kind", "");
      std::string field_s = e.value("field", "real");
      if (field_s != "real" && field_s != "complex") fail(where, "field must be real or complex");
      Field field = field_s == "real" ? Field::real : Field::cplx;
      try {
        if (kind == "lp") {
          if (!e.contains("dim") || !e.at("dim").is_number_integer())
            fail(where, "lp spaces need an integer dim");
          int dim = e.at("dim").get<int>();
          double p;
          const json& jp = e.at("p");
          if (jp.is_string()) {
            std::string ps = jp.get<std::string>();
            if (ps != "inf") fail(where, "p must be a number >= 1 or \"inf\"");
            p = HUGE_VAL;
          } else {
            p = jp.get<double>();
          }
          cat.spaces.push_back(make_lp(label, dim, p, field));
        } else if (kind == "polyhedral") {
          if (field == Field::cplx) fail(where, "polyhedral spaces must be real");
          if (!e.contains("vertices") || !e.at("vertices").is_array() || e.at("vertices").empty())
            fail(where, "polyhedral spaces need a vertex list");
          std::vector<QVec> verts;
          for (const json& jv : e.at("vertices")) verts.push_back(qvec_entry(jv, where));
          int dim = static_cast<int>(verts[0].size());
          for (const QVec& v : verts)
            if (static_cast<int>(v.size()) != dim) fail(where, "vertices must share one dimension");
          std::vector<QVec> facets;
          bool have_facets = e.contains("facets");
          if (have_facets) {
            for (const json& jf : e.at("facets")) facets.push_back(qvec_entry(jf, where));
            for (const QVec& f : facets)
              if (static_cast<int>(f.size()) != dim) fail(where, "facets must share the dimension");
          }
          check_polyhedral(where, verts, have_facets ? &facets : nullptr, dim, cfg, cat.warnings);
          cat.spaces.push_back(make_polyhedral(label, std::move(verts)));
        } else if (kind == "euclidean") {
          if (!e.contains("weights") || !e.at("weights").is_array() || e.at("weights").empty())
            fail(where, "euclidean spaces need a weight list");
          std::vector<double> w;
          for (const json& jw : e.at("weights")) {
            double x = rat_of(jw, where).get_d();
            if (!(x > 0)) fail(where, "weights must be positive");
            w.push_back(x);
          }
          cat.spaces.push_back(make_euclidean_weighted(label, std::move(w), field));
        } else {
          fail(where, "unknown kind \"" + kind + "\" (expected lp, polyhedral or euclidean)");
        }
      } catch (const std::invalid_argument& ex) {
        fail(where, ex.what());
      }
    }
  }

  if (root.contains("operators")) {
    const json& arr = root.at("operators");
    if (!arr.is_array()) throw std::runtime_error("catalog: operators must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& e = arr[i];
      std::string where = "operators[" + std::to_string(i) + "]";
      std::string label = take_label(e, where);
      where += " (" + label + ")";
      std::string dl = e.contains("space") ? e.at("space").get<std::string>()
                                           : e.value("domain", "");
      std::string cl = e.contains("space") ? dl : e.value("codomain", "");
      if (dl.empty() || cl.empty()) fail(where, "need space, or domain and codomain");
      if (!cat.has_space(dl)) fail(where, "unknown domain label: " + dl);
      if (!cat.has_space(cl)) fail(where, "unknown codomain label: " + cl);
      SpacePtr dom = cat.find_space(dl), cod = cat.find_space(cl);
      if (dom->field != cod->field) fail(where, "domain and codomain fields differ");
      const json& jm = e.contains("matrix") ? e.at("matrix") : json();
      if (!jm.is_array() || static_cast<int>(jm.size()) != cod->dim)
        fail(where, "matrix needs " + std::to_string(cod->dim) + " rows");
      CMat m(cod->dim, dom->dim);
      bool cplx = dom->field == Field::cplx;
      for (int r = 0; r < cod->dim; ++r) {
        const json& row = jm[r];
        if (!row.is_array() || static_cast<int>(row.size()) != dom->dim)
          fail(where, "matrix rows need " + std::to_string(dom->dim) + " entries");
        for (int c = 0; c < dom->dim; ++c) m(r, c) = scalar_of(row[c], cplx, where);
      }
      cat.operators.emplace_back(label, make_operator(std::move(m), dom, cod));
    }
  }

  if (root.contains("tensors")) {
    const json& arr = root.at("tensors");
    if (!arr.is_array()) throw std::runtime_error("catalog: tensors must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& e = arr[i];
      std::string where = "tensors[" + std::to_string(i) + "]";
      std::string label = take_label(e, where);
      where += " (" + label + ")";
      std::string ll = e.value("left", ""), rl = e.value("right", "");
      if (ll.empty() || rl.empty()) fail(where, "need left and right space labels");
      if (!cat.has_space(ll)) fail(where, "unknown left label: " + ll);
      if (!cat.has_space(rl)) fail(where, "unknown right label: " + rl);
      SpacePtr left = cat.find_space(ll), right = cat.find_space(rl);
      if (left->field != right->field) fail(where, "left and right fields differ");
      const json& jc = e.contains("coeffs") ? e.at("coeffs") : json();
      if (!jc.is_array() || static_cast<int>(jc.size()) != left->dim)
        fail(where, "coeffs needs " + std::to_string(left->dim) + " rows");
      CMat m(left->dim, right->dim);
      bool cplx = left->field == Field::cplx;
      for (int r = 0; r < left->dim; ++r) {
        const json& row = jc[r];
        if (!row.is_array() || static_cast<int>(row.size()) != right->dim)
          fail(where, "coeff rows need " + std::to_string(right->dim) + " entries");
        for (int c = 0; c < right->dim; ++c) m(r, c) = scalar_of(row[c], cplx, where);
      }
      cat.tensors.emplace_back(label, make_tensor(std::move(m), left, right));
    }
  }

  if (cat.spaces.empty()) throw std::runtime_error("catalog: no spaces defined");
  return cat;
}

Catalog load_catalog(const std::string& path, const Config& cfg) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("catalog: cannot open " + path);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
  std::fclose(f);
  return parse_catalog_text(text, cfg);
}

std::string default_catalog_json() {
  return R"({
  "spaces": [
    {"label": "l1-2", "kind": "lp", "p": 1, "dim": 2},
    {"label": "l1-3", "kind": "lp", "p": 1, "dim": 3},
    {"label": "linf2", "kind": "lp", "p": "inf", "dim": 2},
    {"label": "linf3", "kind": "lp", "p": "inf", "dim": 3},
    {"label": "linf4", "kind": "lp", "p": "inf", "dim": 4},
    {"label": "l2-2", "kind": "lp", "p": 2, "dim": 2},
    {"label": "l2-2c", "kind": "lp", "p": 2, "dim": 2, "field": "complex"},
    {"label": "hex2", "kind": "polyhedral", "vertices": [
      ["1", "0"], ["-1", "0"], ["1/2", "1"], ["1/2", "-1"], ["-1/2", "1"], ["-1/2", "-1"]
    ]}
  ],
  "operators": [
    {"label": "rot2", "space": "l2-2", "matrix": [["0", "-1"], ["1", "0"]]},
    {"label": "step2", "space": "linf2", "matrix": [["1", "1"], ["0", "1"]]},
    {"label": "swap12", "domain": "l1-2", "codomain": "linf2", "matrix": [["0", "1"], ["1", "0"]]}
  ],
  "tensors": [
    {"label": "diag2", "left": "l1-2", "right": "linf2", "coeffs": [["1", "0"], ["0", "1"]]},
    {"label": "third2", "left": "l1-2", "right": "linf2", "coeffs": [["1/3", "0"], ["0", "1"]]}
  ]
}
)";
}

std::string dump_catalog(const Catalog& c) {
  Config cfg;
  json root;
  json spaces = json::array();
  for (const SpacePtr& s : c.spaces) {
    json e;
    e["label"] = s->label;
    if (s->kind == NormKind::lp) {
      e["kind"] = "lp";
      if (std::isinf(s->p))
        e["p"] = "inf";
      else
        e["p"] = s->p;
      e["dim"] = s->dim;
    } else if (s->kind == NormKind::polyhedral) {
      e["kind"] = "polyhedral";
      json verts = json::array();
      for (const QVec& v : ensure_poly(*s, cfg).verts) {
        json jv = json::array();
        for (const Rat& x : v) jv.push_back(rat_str(x));
        verts.push_back(std::move(jv));
      }
      e["vertices"] = std::move(verts);
    } else if (s->kind == NormKind::euclidean_weighted) {
      e["kind"] = "euclidean";
      e["weights"] = s->weights;
    } else {
      continue;  // derived kinds are not catalog literals
    }
    if (s->field == Field::cplx) e["field"] = "complex";
    spaces.push_back(std::move(e));
  }
  root["spaces"] = std::move(spaces);

  auto mat_json = [](const CMat& m, bool cplx) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (int cidx = 0; cidx < m.cols(); ++cidx) {
        Cx v = m(r, cidx);
        if (cplx && v.imag() != 0.0) {
          json o;
          o["re"] = Rat(v.real()).get_str();
          o["im"] = Rat(v.imag()).get_str();
          row.push_back(std::move(o));
        } else {
          row.push_back(Rat(v.real()).get_str());
        }
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };

  json ops = json::array();
  for (const auto& [label, op] : c.operators) {
    json e;
    e["label"] = label;
    if (same_space(*op.domain, *op.codomain)) {
      e["space"] = op.domain->label;
    } else {
      e["domain"] = op.domain->label;
      e["codomain"] = op.codomain->label;
    }
    e["matrix"] = mat_json(op.m, op.domain->field == Field::cplx);
    ops.push_back(std::move(e));
  }
  if (!ops.empty()) root["operators"] = std::move(ops);

  json tens = json::array();
  for (const auto& [label, t] : c.tensors) {
    json e;
    e["label"] = label;
    e["left"] = t.left->label;
    e["right"] = t.right->label;
    e["coeffs"] = mat_json(t.c, t.left->field == Field::cplx);
    tens.push_back(std::move(e));
  }
  if (!tens.empty()) root["tensors"] = std::move(tens);

  return root.dump(2) + "\n";
}

}  // namespace banach
