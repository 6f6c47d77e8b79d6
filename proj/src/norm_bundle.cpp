#include <algorithm>
#include <functional>

#include "skdv/solver.hpp"

namespace skdv {
namespace {

SpaceTimeField map_slices(const SpaceTimeField& F, const std::function<Field(const Field&)>& op) {
    SpaceTimeField out;
    out.grid = F.grid;
    out.times = F.times;
    out.slices.reserve(F.slices.size());
    for (const auto& f : F.slices) out.slices.push_back(op(f));
    return out;
}

double sup_in_time(const SpaceTimeField& F, const NormSpec& spec) {
    double m = 0.0;
    for (const auto& f : F.slices) m = std::max(m, norm(f, spec));
    return m;
}

}  // namespace

double NormBundle::component(const std::string& name) const {
    for (const auto& [key, value] : components)
        if (key == name) return value;
    throw ParameterError("unknown norm bundle component: " + name);
}

NormBundle norm_bundle(const Trajectory& traj, double s, double r1, double r2) {
    if (!(s > 0.75)) throw ParameterError("norm_bundle requires s > 3/4");
    if (r1 < 0.0 || r2 < 0.0) throw ParameterError("norm_bundle weights must be >= 0");
    if (s + 0.5 < r1) throw ParameterError("norm_bundle requires s + 1/2 >= r1");
    if (s < 2.0 * r2) throw ParameterError("norm_bundle requires s >= 2 r2");
    if (traj.states.empty()) throw ParameterError("norm_bundle on an empty trajectory");

    const SpaceTimeField U = traj.u_field();
    const SpaceTimeField V = traj.v_field();
    const auto dx = [](const Field& f) { return derivative(f, 1); };
    const SpaceTimeField Ux = map_slices(U, dx);
    const SpaceTimeField Vx = map_slices(V, dx);

    NormBundle b;
    auto add = [&b](const char* name, double v) {
        b.components.emplace_back(name, v);
        return v;
    };
    // mu1 of u.
    b.mu1 += add("u_Linf_H", sup_in_time(U, NormSpec::sobolev(s + 0.5)));
    b.mu1 += add("u_kato", mixed_norm(map_slices(U, [s](const Field& f) {
                                          return fractional_derivative(f, s + 0.5);
                                      }),
                                      kInf, 2.0, MixOrder::x_then_t));
    b.mu1 += add("u_maximal", mixed_norm(U, 2.0, kInf, MixOrder::x_then_t));
    b.mu1 += add("u_strichartz", mixed_norm(Ux, kInf, 4.0, MixOrder::t_then_x));
    // mu2 of v.
    b.mu2 += add("v_Linf_H", sup_in_time(V, NormSpec::sobolev(s)));
    b.mu2 += add("v_kato", mixed_norm(map_slices(Vx, [s](const Field& f) {
                                          return fractional_derivative(f, s);
                                      }),
                                      kInf, 2.0, MixOrder::x_then_t));
    b.mu2 += add("v_kato_low", mixed_norm(map_slices(Vx, [s](const Field& f) {
                                              return fractional_derivative(f, s - 0.5);
                                          }),
                                          kInf, 2.0, MixOrder::x_then_t));
    b.mu2 += add("v_maximal", mixed_norm(V, 2.0, kInf, MixOrder::x_then_t));
    b.mu2 += add("v_strichartz", mixed_norm(Vx, kInf, 4.0, MixOrder::t_then_x));
    // Weighted supremum parts.
    b.mu3 = b.mu1 + add("u_weight", sup_in_time(U, NormSpec::weighted_abs(r1)));
    b.mu4 = b.mu2 + add("v_weight", sup_in_time(V, NormSpec::weighted_abs(r2)));
    return b;
}

}  // namespace skdv
