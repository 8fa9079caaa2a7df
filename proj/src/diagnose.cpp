#include "sympcy/diagnose.hpp"

#include <cmath>
#include <vector>

#include "sympcy/util.hpp"

namespace sympcy {

namespace {

struct PointScan {
  std::vector<double> pos_key;   // min_eig of classify(rho~)
  std::vector<double> neg_key;   // max_eig of classify(sigma~)
  std::vector<double> dual;      // duality defect, NaN when unavailable
  std::vector<char> rho_ok, sigma_ok;
};

}  // namespace

Diagnostics diagnose(const FormField& phi, const RHSData& rhs, const SymplecticFrame& fr,
                     const std::pair<FormField, FormField>& Omega, bool with_ricci) {
  Diagnostics d;
  auto def = deform(phi, Omega, fr, +1);
  const FormField& rt = def.first;
  const FormField& st = def.second;
  const long long np = rt.npts();

  d.residual_norm = residual(phi, rhs, fr, Omega).maxnorm();

  PointScan scan;
  scan.pos_key.assign(np, 0.0);
  scan.neg_key.assign(np, 0.0);
  scan.dual.assign(np, 0.0);
  scan.rho_ok.assign(np, 0);
  scan.sigma_ok.assign(np, 0);

  parallel_for(np, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      KForm r = rt.at(p), s = st.at(p);
      Positivity pr = classify(r, fr);
      Positivity ps = classify(s, fr);
      scan.pos_key[p] = pr.min_eig;
      scan.neg_key[p] = ps.max_eig;
      StableAnalysis ar = analyze(r, fr);
      StableAnalysis as = analyze(s, fr);
      scan.rho_ok[p] = ar.complex_type ? 1 : 0;
      scan.sigma_ok[p] = as.complex_type ? 1 : 0;
      scan.dual[p] = ar.complex_type ? duality_defect(r, s, fr) : 0.0;
    }
  });

  bool rho_all = true, sigma_all = true;
  long long argpos = 0, argneg = 0, argdual = 0;
  double worst_dual = 0.0;
  for (long long p = 0; p < np; ++p) {
    rho_all = rho_all && scan.rho_ok[p];
    sigma_all = sigma_all && scan.sigma_ok[p];
    if (scan.pos_key[p] < scan.pos_key[argpos]) argpos = p;
    if (scan.neg_key[p] > scan.neg_key[argneg]) argneg = p;
    if (scan.dual[p] > worst_dual) {
      worst_dual = scan.dual[p];
      argdual = p;
    }
  }
  d.rho_stable_everywhere = rho_all;
  d.sigma_stable_everywhere = sigma_all;
  d.positivity_worst = classify(rt.at(argpos), fr);
  d.positivity_worst_point = argpos;
  d.negativity_worst = classify(st.at(argneg), fr);
  d.negativity_worst_point = argneg;
  if (rho_all) {
    d.duality_available = true;
    d.duality_worst = worst_dual;
    d.duality_worst_point = argdual;
  }

  {
    FormField num = pairing_ratio_field(wedge_dealiased(rt, st), fr);
    FormField den = pairing_ratio_field(wedge_dealiased(Omega.first, Omega.second), fr);
    const double m1 = num.mean(0), m0 = den.mean(0);
    d.volume_conservation_defect = std::abs(m1 - m0) / std::abs(m0);
  }

  if (with_ricci && rho_all) {
    RicciResult rr = ricci_probe(rt, fr);
    d.ricci_available = rr.available;
    d.ricci_trusted = rr.trusted;
    d.ricci_norm = rr.ricci_norm;
    d.ricci_antisym_worst = rr.antisym_worst;
  }
  return d;
}

namespace {

nlohmann::ordered_json positivity_json(const Positivity& p, long long point) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(p.verdict);
  j["min_eig"] = p.min_eig;
  j["max_eig"] = p.max_eig;
  j["primitive_defect"] = p.primitive_defect;
  j["antisym_defect"] = p.antisym_defect;
  j["point"] = point;
  return j;
}

}  // namespace

nlohmann::ordered_json diagnostics_json(const Diagnostics& d) {
  nlohmann::ordered_json j;
  j["residual_norm"] = d.residual_norm;
  j["positivity_worst"] = positivity_json(d.positivity_worst, d.positivity_worst_point);
  j["negativity_worst"] = positivity_json(d.negativity_worst, d.negativity_worst_point);
  if (d.duality_available) j["duality_worst"] = d.duality_worst;
  j["volume_conservation_defect"] = d.volume_conservation_defect;
  if (d.ricci_available) {
    j["ricci_norm"] = d.ricci_norm;
    j["ricci_trusted"] = d.ricci_trusted;
    j["ricci_antisym_worst"] = d.ricci_antisym_worst;
  }
  j["rho_stable_everywhere"] = d.rho_stable_everywhere;
  j["sigma_stable_everywhere"] = d.sigma_stable_everywhere;
  return j;
}

}  // namespace sympcy
