#include "banachlab/catalog.hpp"
#include "banachlab/ideals.hpp"
#include "banachlab/report.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/slices.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace banach;

namespace {

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> split_targets(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string vec_str(const CVec& v) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    char buf[64];
    if (v[i].imag() == 0.0)
      std::snprintf(buf, sizeof buf, "%.6g", v[i].real());
    else
      std::snprintf(buf, sizeof buf, "%.6g%+.6gi", v[i].real(), v[i].imag());
    out << buf;
  }
  out << ")";
  return out.str();
}

CVec seeded_vector(const SpacePtr& s, std::uint64_t seed, std::uint64_t salt) {
  Rng rng(mix_seed(seed, salt));
  CVec v(s->dim);
  for (int i = 0; i < s->dim; ++i)
    v[i] = s->field == Field::cplx ? Cx(rng.normal(), rng.normal()) : Cx(rng.normal(), 0.0);
  return v;
}

struct CmdCtx {
  Catalog cat;
  Config cfg;
  std::vector<std::string> targets;
  double tol = 0.25;
  int budget = 0;
  bool input_error = false;
};

ReportItem item_error(const std::string& target, const std::string& msg) {
  ReportItem it;
  it.targets = {target};
  it.error = msg;
  return it;
}

// ---- commands ------------------------------------------------------------

void cmd_norm(CmdCtx& ctx, RunReport& rep, bool dual_side) {
  for (const std::string& label : ctx.targets) {
    if (!ctx.cat.has_space(label)) {
      rep.items.push_back(item_error(label, "unknown label: " + label));
      ctx.input_error = true;
      continue;
    }
    SpacePtr s = ctx.cat.find_space(label);
    ReportItem it;
    it.targets = {label};
    try {
      CVec v = seeded_vector(s, ctx.cfg.seed, fnv64(label) ^ (dual_side ? 0xD0A1ULL : 0x12ULL));
      double val = dual_side ? dual_norm(*s, v) : eval_norm(*s, v);
      ReportValue rv;
      rv.name = dual_side ? "dual_norm" : "norm";
      rv.value = val;
      std::string side = dual_side ? "dual-norm" : "norm";
      if (s->polyhedral_capable() && s->dim <= ctx.cfg.poly_convert_max_dim) {
        QVec q = real_qvec(v);
        Rat ex = dual_side ? dual_norm_exact(*s, q, ctx.cfg) : eval_norm_exact(*s, q, ctx.cfg);
        rv.value = ex.get_d();
        rv.exact = true;
        rv.exact_form = rat_str(ex);
        rv.source = side + "/exact-rational";
      } else if (s->kind == NormKind::lp || s->kind == NormKind::euclidean_weighted) {
        rv.exact = true;
        rv.source = side + "/closed-form";
      } else {
        rv.exact = false;
        rv.source = side + "/oracle";
      }
      it.values.push_back(std::move(rv));
      it.witness = (dual_side ? "f = " : "x = ") + vec_str(v);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

const Operator* need_operator(CmdCtx& ctx, RunReport& rep, const std::string& label) {
  const Operator* op = ctx.cat.find_operator(label);
  if (!op) {
    rep.items.push_back(item_error(label, "unknown label: " + label));
    ctx.input_error = true;
  }
  return op;
}

void cmd_opnorm(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const Operator* op = need_operator(ctx, rep, label);
    if (!op) continue;
    ReportItem it;
    it.targets = {label};
    try {
      NormResult r = op_norm(*op, ctx.cfg);
      ReportValue rv{"operator_norm", r.value, r.exact, "op-norm/" + r.method, std::nullopt};
      if (r.value_exact) rv.exact_form = rat_str(*r.value_exact);
      it.values.push_back(std::move(rv));
      it.witness = "attained at x = " + vec_str(r.witness);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_vradius(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const Operator* op = need_operator(ctx, rep, label);
    if (!op) continue;
    ReportItem it;
    it.targets = {label};
    try {
      RadiusResult r = numerical_radius(*op, ctx.cfg);
      it.values.push_back({"numerical_radius", r.value, r.exact,
                           r.exact ? "radius/finite-pair-max" : "radius/delta-schedule",
                           std::nullopt});
      it.witness = "state pair x = " + vec_str(r.witness.x) +
                   ", x* = " + vec_str(r.witness.x_star.coeffs);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_vdelta(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const Operator* op = need_operator(ctx, rep, label);
    if (!op) continue;
    ReportItem it;
    it.targets = {label};
    try {
      RadiusResult r = radius_schedule(*op, ctx.cfg);
      for (const auto& [delta, value] : r.delta_schedule) {
        char name[48];
        std::snprintf(name, sizeof name, "v_delta(%.10g)", delta);
        it.values.push_back({name, value, r.exact,
                             r.exact ? "radius/finite-pair-max" : "radius/relaxed-states",
                             std::nullopt});
      }
      it.values.push_back({"limit", r.value, r.exact,
                           r.exact ? "radius/finite-pair-max" : "radius/delta-schedule",
                           std::nullopt});
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_nindex(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    if (!ctx.cat.has_space(label)) {
      rep.items.push_back(item_error(label, "unknown label: " + label));
      ctx.input_error = true;
      continue;
    }
    SpacePtr s = ctx.cat.find_space(label);
    ReportItem it;
    it.targets = {label};
    try {
      const long long dd = static_cast<long long>(s->dim) * s->dim;
      IndexCertificate c;
      if (s->field == Field::real && s->polyhedral_capable() &&
          dd <= ctx.cfg.exact_index_max_dim_sq)
        c = numerical_index_exact(s, ctx.cfg);
      else
        c = numerical_index_estimate(s, ctx.budget, ctx.cfg);
      ReportValue rv{"numerical_index", c.value, c.exact, "numerical-index/" + c.method,
                     std::nullopt};
      if (c.value_exact) rv.exact_form = rat_str(*c.value_exact);
      it.values.push_back(std::move(rv));
      it.values.push_back({"witness_operator_v", c.witness_value, c.exact,
                           "numerical-index/" + c.method, std::nullopt});
      it.witness = "witness endomorphism of " + label + " with v = " +
                   std::to_string(c.witness_value);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_tensor_norm(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const TensorElement* t = ctx.cat.find_tensor(label);
    if (!t) {
      rep.items.push_back(item_error(label, "unknown label: " + label));
      ctx.input_error = true;
      continue;
    }
    ReportItem it;
    it.targets = {label};
    try {
      PiResult pi = pi_norm(*t, ctx.cfg);
      EpsResult ep = eps_norm(*t, ctx.cfg);
      ReportValue pv{"pi_norm", pi.value, pi.exact, "tensor/" + pi.method, std::nullopt};
      if (pi.value_exact) pv.exact_form = rat_str(*pi.value_exact);
      ReportValue ev{"eps_norm", ep.value, ep.exact, "tensor/" + ep.method, std::nullopt};
      if (ep.value_exact) ev.exact_form = rat_str(*ep.value_exact);
      it.values.push_back(std::move(pv));
      it.values.push_back(std::move(ev));
      it.witness = "pi decomposition of length " + std::to_string(pi.decomposition.size()) +
                   "; eps pair f = " + vec_str(ep.left_witness) +
                   ", g = " + vec_str(ep.right_witness);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_nuclear(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const Operator* op = need_operator(ctx, rep, label);
    if (!op) continue;
    ReportItem it;
    it.targets = {label};
    try {
      PiResult r = nuclear_norm_operator(*op, ctx.cfg);
      ReportValue rv{"nuclear_norm", r.value, r.exact, "nuclear/" + r.method, std::nullopt};
      if (r.value_exact) rv.exact_form = rat_str(*r.value_exact);
      it.values.push_back(std::move(rv));
      it.witness = "decomposition of length " + std::to_string(r.decomposition.size());
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_daugavet(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    const Operator* op = need_operator(ctx, rep, label);
    if (!op) continue;
    ReportItem it;
    it.targets = {label};
    try {
      DaugavetReport r = daugavet_defect(*op, ctx.cfg);
      bool exact = op->domain->polyhedral_capable() &&
                   op->domain->dim <= ctx.cfg.poly_convert_max_dim;
      std::string src = exact ? "daugavet/exact-pairs" : "daugavet/schedule";
      it.values.push_back({"defect", r.defect, exact, src, std::nullopt});
      it.values.push_back({"sup_re_v", r.sup_re_v, exact, src, std::nullopt});
      it.values.push_back({"norm", r.norm_t, exact, src, std::nullopt});
      it.values.push_back({"norm_id_plus_t", r.norm_id_plus_t, exact, src, std::nullopt});
      it.margin = r.norm_t - r.sup_re_v;
      it.verdict = std::abs(r.defect) <= 1e-7 ? "daugavet-equation" : "no-daugavet-equation";
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

void cmd_slice(CmdCtx& ctx, RunReport& rep) {
  for (const std::string& label : ctx.targets) {
    if (!ctx.cat.has_space(label)) {
      rep.items.push_back(item_error(label, "unknown label: " + label));
      ctx.input_error = true;
      continue;
    }
    SpacePtr s = ctx.cat.find_space(label);
    ReportItem it;
    it.targets = {label};
    try {
      std::vector<QVec> ext = extreme_points(*s, ctx.cfg);
      std::vector<CVec> pts;
      for (const QVec& q : ext) {
        CVec v(s->dim);
        for (int i = 0; i < s->dim; ++i) v[i] = Cx(q[i].get_d(), 0.0);
        pts.push_back(std::move(v));
      }
      CVec f = seeded_vector(s, ctx.cfg.seed, fnv64(label) ^ 0x511CEULL);
      double dn = dual_norm(*s, f);
      if (dn < 1e-12) throw std::runtime_error("degenerate slice functional");
      f /= dn;
      SliceSpec spec{pts, Functional{f, s}, ctx.tol};
      auto members = slice(spec);
      it.values.push_back({"slice_size", static_cast<double>(members.size()), false,
                           "slice/extreme-points", std::nullopt});
      it.values.push_back({"family_size", static_cast<double>(pts.size()), true,
                           "slice/extreme-points", std::nullopt});
      std::string w = "functional " + vec_str(f) + ", depth " + std::to_string(ctx.tol) +
                      ", members:";
      for (const CVec& mpt : members) w += " " + vec_str(mpt);
      it.witness = std::move(w);
    } catch (const std::exception& e) {
      it.error = e.what();
    }
    rep.items.push_back(std::move(it));
  }
}

int cmd_verify(CmdCtx& ctx, RunReport& rep) {
  std::vector<SpacePtr> spaces;
  for (const std::string& label : ctx.targets) {
    if (!ctx.cat.has_space(label)) {
      rep.items.push_back(item_error(label, "unknown label: " + label));
      ctx.input_error = true;
      continue;
    }
    spaces.push_back(ctx.cat.find_space(label));
  }
  bool violated = false;
  if (!spaces.empty()) {
    auto reports = verify_suite(spaces, ctx.cfg);
    for (const InequalityReport& r : reports) {
      ReportItem it;
      auto slash = r.name.find('/');
      it.targets = split_targets(slash == std::string::npos ? r.name : r.name.substr(slash + 1));
      it.values.push_back({r.name + "/lhs", r.lhs.value, r.lhs.exact, r.lhs.source, std::nullopt});
      it.values.push_back({r.name + "/rhs", r.rhs.value, r.rhs.exact, r.rhs.source, std::nullopt});
      it.margin = r.margin;
      it.verdict = r.verdict;
      it.witness = r.witnesses;
      rep.items.push_back(std::move(it));
      if (r.verdict == "violated") violated = true;
    }
  }
  return violated ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banachlab: numerical ranges, numerical indices and tensor norms "
               "over a catalog of finite-dimensional normed spaces"};
  std::string catalog_path, cmd, target_csv, format = "json", out_path, seed_str = "0x5EED";
  double tol = 0.25;
  int budget = 0;
  app.add_option("--catalog", catalog_path, "catalog JSON path (default: $BANACHLAB_CATALOG or built-in)");
  app.add_option("--cmd", cmd,
                 "one of norm, dual, opnorm, vradius, vdelta, nindex, tensor-norm, nuclear, "
                 "daugavet, slice, verify")
      ->required();
  app.add_option("--target", target_csv, "comma-separated labels (default: all applicable)");
  app.add_option("--tol", tol, "slice depth / tolerance knob (positive)");
  app.add_option("--budget", budget, "iteration budget for heuristic paths (0 = defaults)");
  app.add_option("--seed", seed_str, "hex seed for every heuristic path");
  app.add_option("--format", format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  if (!(tol > 0.0)) {
    std::cerr << "tolerance must be positive\n";
    return 1;
  }
  std::uint64_t seed = 0;
  {
    std::string s = seed_str;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    char* end = nullptr;
    seed = std::strtoull(s.c_str(), &end, 16);
    if (s.empty() || (end && *end)) {
      std::cerr << "seed must be hexadecimal\n";
      return 1;
    }
  }

  CmdCtx ctx;
  ctx.cfg = default_config();
  ctx.cfg.seed = seed;
  ctx.tol = tol;
  ctx.budget = budget;
  if (budget > 0) ctx.cfg.index_starts = std::max(1, budget / ctx.cfg.index_iters);

  std::string catalog_name = catalog_path;
  try {
    if (catalog_path.empty()) {
      const char* env = std::getenv("BANACHLAB_CATALOG");
      if (env && *env) {
        catalog_name = env;
        ctx.cat = load_catalog(env, ctx.cfg);
      } else {
        catalog_name = "built-in";
        ctx.cat = parse_catalog_text(default_catalog_json(), ctx.cfg);
      }
    } else {
      ctx.cat = load_catalog(catalog_path, ctx.cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  RunReport rep;
  rep.command = cmd;
  rep.catalog_path = catalog_name;
  rep.seed = seed;
  rep.tol = tol;
  rep.budget = budget;

  // default targets
  if (!target_csv.empty()) {
    ctx.targets = split_targets(target_csv);
  } else if (cmd == "opnorm" || cmd == "vradius" || cmd == "vdelta" || cmd == "nuclear" ||
             cmd == "daugavet") {
    for (const auto& [label, op] : ctx.cat.operators) ctx.targets.push_back(label);
  } else if (cmd == "tensor-norm") {
    for (const auto& [label, t] : ctx.cat.tensors) ctx.targets.push_back(label);
  } else if (cmd == "slice") {
    for (const SpacePtr& s : ctx.cat.spaces)
      if (s->polyhedral_capable()) ctx.targets.push_back(s->label);
  } else {
    for (const SpacePtr& s : ctx.cat.spaces) ctx.targets.push_back(s->label);
  }

  double t0 = now_s();
  int exit_code = 0;
  if (cmd == "norm") {
    cmd_norm(ctx, rep, false);
  } else if (cmd == "dual") {
    cmd_norm(ctx, rep, true);
  } else if (cmd == "opnorm") {
    cmd_opnorm(ctx, rep);
  } else if (cmd == "vradius") {
    cmd_vradius(ctx, rep);
  } else if (cmd == "vdelta") {
    cmd_vdelta(ctx, rep);
  } else if (cmd == "nindex") {
    cmd_nindex(ctx, rep);
  } else if (cmd == "tensor-norm") {
    cmd_tensor_norm(ctx, rep);
  } else if (cmd == "nuclear") {
    cmd_nuclear(ctx, rep);
  } else if (cmd == "daugavet") {
    cmd_daugavet(ctx, rep);
  } else if (cmd == "slice") {
    cmd_slice(ctx, rep);
  } else if (cmd == "verify") {
    exit_code = cmd_verify(ctx, rep);
  } else {
    std::cerr << "unknown command: " << cmd << "\n";
    return 1;
  }
  rep.wall_time_s = now_s() - t0;
  if (ctx.input_error) exit_code = 1;

  std::string text = format == "csv"     ? render_csv(rep)
                     : format == "human" ? render_human(rep)
                                         : render_json(rep);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    f << text;
  }
  return exit_code;
}
