#include "bnf/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bnf {

namespace {

Json mode_to_json(const ModeVector& a, int dim) {
    Json out = Json::array();
    for (int k = 0; k < dim; ++k) out.push_back(a[k]);
    return out;
}

ModeVector mode_from_json(const Json& j) {
    if (!j.is_array() || j.size() > kMaxDim)
        throw std::runtime_error("serialize: bad mode vector");
    ModeVector a{};
    for (std::size_t k = 0; k < j.size(); ++k) a[k] = j[k].get<int>();
    return a;
}

Json tuple_to_json(const IndexTuple& t, int dim) {
    Json out = Json::array();
    for (const auto& e : t.entries) {
        Json row = Json::array();
        row.push_back(e.delta);
        for (int k = 0; k < dim; ++k) row.push_back(e.a[k]);
        out.push_back(std::move(row));
    }
    return out;
}

IndexTuple tuple_from_json(const Json& j) {
    IndexTuple t;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() < 2)
            throw std::runtime_error("serialize: bad tuple entry");
        LatticeIndex e;
        e.delta = row[0].get<int>();
        for (std::size_t k = 1; k < row.size() && k <= kMaxDim; ++k)
            e.a[k - 1] = row[k].get<int>();
        t.entries.push_back(e);
    }
    return t;
}

}  // namespace

Json to_json(const HomogeneousPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [t, c] : p.terms())
        terms.push_back({{"tuple", tuple_to_json(t, p.dim())},
                         {"re", c.real()},
                         {"im", c.imag()}});
    return {{"dim", p.dim()}, {"order", p.order()}, {"terms", std::move(terms)}};
}

HomogeneousPolynomial polynomial_from_json(const Json& j) {
    HomogeneousPolynomial p(j.at("order").get<int>(), j.at("dim").get<int>());
    for (const auto& term : j.at("terms"))
        p.add_term(tuple_from_json(term.at("tuple")),
                   Complex{term.at("re").get<double>(),
                           term.at("im").get<double>()});
    return p;
}

Json to_json(const PolynomialFamily& f) {
    Json parts = Json::array();
    for (const auto& [n, p] : f.parts) parts.push_back(to_json(p));
    return {{"order_cap", f.order_cap},
            {"tail_dropped", f.tail_dropped},
            {"parts", std::move(parts)}};
}

PolynomialFamily family_from_json(const Json& j) {
    PolynomialFamily f;
    f.order_cap = j.at("order_cap").get<int>();
    f.tail_dropped = j.at("tail_dropped").get<bool>();
    for (const auto& part : j.at("parts")) f.add_part(polynomial_from_json(part));
    return f;
}

Json to_json(const FrequencyModel& m) {
    switch (m.kind()) {
        case FrequencyKind::NLW:
            return {{"kind", "nlw"}, {"d", m.dim()}, {"m", m.mass()}};
        case FrequencyKind::NLS: {
            Json table = Json::array();
            for (const auto& [key, v] : m.table())
                table.push_back({{"a", mode_to_json(unpack_mode(key), m.dim())},
                                 {"v", v}});
            return {{"kind", "nls"},
                    {"d", m.dim()},
                    {"decay", m.decay()},
                    {"cutoff", m.cutoff()},
                    {"v_table", std::move(table)}};
        }
        case FrequencyKind::Custom: {
            Json table = Json::array();
            for (const auto& [key, w] : m.table())
                table.push_back({{"a", mode_to_json(unpack_mode(key), m.dim())},
                                 {"omega", w}});
            return {{"kind", "custom"},
                    {"d", m.dim()},
                    {"cutoff", m.cutoff()},
                    {"omega_table", std::move(table)}};
        }
    }
    throw std::logic_error("serialize: unknown frequency kind");
}

FrequencyModel frequency_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nlw") return FrequencyModel::nlw(j.at("m").get<double>());
    if (kind == "nls") {
        std::unordered_map<std::uint64_t, double> table;
        for (const auto& row : j.at("v_table"))
            table[pack_mode(mode_from_json(row.at("a")))] =
                row.at("v").get<double>();
        return FrequencyModel::nls(j.at("d").get<int>(),
                                   j.at("decay").get<double>(), std::move(table),
                                   j.at("cutoff").get<int>());
    }
    if (kind == "custom") {
        std::unordered_map<std::uint64_t, double> table;
        for (const auto& row : j.at("omega_table"))
            table[pack_mode(mode_from_json(row.at("a")))] =
                row.at("omega").get<double>();
        return FrequencyModel::custom(j.at("d").get<int>(), std::move(table),
                                      j.at("cutoff").get<int>());
    }
    throw std::runtime_error("serialize: unknown frequency kind " + kind);
}

Json to_json(const NonlinearitySpec& s) {
    Json orders = Json::array();
    for (const auto& o : s.orders) {
        Json fourier = Json::array();
        for (const auto& [key, c] : o.fourier)
            fourier.push_back({{"b", mode_to_json(unpack_mode(key), s.dim)},
                               {"re", c.real()},
                               {"im", c.imag()}});
        orders.push_back(
            {{"n", o.n}, {"q", o.q}, {"fourier", std::move(fourier)}});
    }
    return {{"kind", s.kind == FrequencyKind::NLW ? "nlw" : "nls"},
            {"d", s.dim},
            {"cutoff", s.cutoff},
            {"orders", std::move(orders)}};
}

NonlinearitySpec nonlinearity_from_json(const Json& j) {
    NonlinearitySpec s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nlw") s.kind = FrequencyKind::NLW;
    else if (kind == "nls") s.kind = FrequencyKind::NLS;
    else throw std::runtime_error("serialize: unknown nonlinearity kind " + kind);
    s.dim = j.at("d").get<int>();
    s.cutoff = j.at("cutoff").get<int>();
    for (const auto& row : j.at("orders")) {
        NonlinearityOrder o;
        o.n = row.at("n").get<int>();
        o.q = row.value("q", 0);
        for (const auto& f : row.at("fourier"))
            o.fourier[pack_mode(mode_from_json(f.at("b")))] =
                Complex{f.at("re").get<double>(), f.at("im").get<double>()};
        s.orders.push_back(std::move(o));
    }
    return s;
}

Json to_json(const Certificate& c) {
    Json rows = Json::array();
    for (const auto& r : c.rows)
        rows.push_back({{"l", r.l},
                        {"chi_norm", r.chi_norm},
                        {"disp_lhs", r.disp_lhs},
                        {"disp_rhs", r.disp_rhs},
                        {"z_lhs", r.z_lhs},
                        {"z_rhs", r.z_rhs},
                        {"rem_lhs", r.rem_lhs},
                        {"rem_rhs", r.rem_rhs},
                        {"ok", r.ok}});
    return {{"R", c.R},
            {"R_star", c.R_star},
            {"rows", std::move(rows)},
            {"disp_total_lhs", c.disp_total_lhs},
            {"disp_total_rhs", c.disp_total_rhs},
            {"z_total_lhs", c.z_total_lhs},
            {"z_total_rhs", c.z_total_rhs},
            {"rem_total_lhs", c.rem_total_lhs},
            {"rem_total_rhs", c.rem_total_rhs},
            {"c_n_estimated", c.c_n_estimated},
            {"all_ok", c.all_ok}};
}

Json to_json(const NormalFormOutcome& o) {
    Json gens = Json::array();
    for (const auto& g : o.generators) gens.push_back(to_json(g));
    return {{"generators", std::move(gens)},
            {"normal", to_json(o.normal)},
            {"remainder", to_json(o.remainder)},
            {"certificate", to_json(o.certificate)}};
}

NormalFormOutcome outcome_from_json(const Json& j) {
    NormalFormOutcome o;
    for (const auto& g : j.at("generators"))
        o.generators.push_back(polynomial_from_json(g));
    o.normal = family_from_json(j.at("normal"));
    o.remainder = family_from_json(j.at("remainder"));
    const Json& c = j.at("certificate");
    o.certificate.R = c.at("R").get<double>();
    o.certificate.R_star = c.at("R_star").get<double>();
    o.certificate.disp_total_lhs = c.at("disp_total_lhs").get<double>();
    o.certificate.disp_total_rhs = c.at("disp_total_rhs").get<double>();
    o.certificate.z_total_lhs = c.at("z_total_lhs").get<double>();
    o.certificate.z_total_rhs = c.at("z_total_rhs").get<double>();
    o.certificate.rem_total_lhs = c.at("rem_total_lhs").get<double>();
    o.certificate.rem_total_rhs = c.at("rem_total_rhs").get<double>();
    o.certificate.c_n_estimated = c.at("c_n_estimated").get<bool>();
    o.certificate.all_ok = c.at("all_ok").get<bool>();
    for (const auto& row : c.at("rows")) {
        CertificateRow r;
        r.l = row.at("l").get<int>();
        r.chi_norm = row.at("chi_norm").get<double>();
        r.disp_lhs = row.at("disp_lhs").get<double>();
        r.disp_rhs = row.at("disp_rhs").get<double>();
        r.z_lhs = row.at("z_lhs").get<double>();
        r.z_rhs = row.at("z_rhs").get<double>();
        r.rem_lhs = row.at("rem_lhs").get<double>();
        r.rem_rhs = row.at("rem_rhs").get<double>();
        r.ok = row.at("ok").get<bool>();
        o.certificate.rows.push_back(r);
    }
    return o;
}

Json to_json(const MeasureReport& r) {
    Json per_l = Json::object();
    for (const auto& [l, f] : r.per_l) per_l[std::to_string(l)] = f;
    return {{"samples", r.samples},
            {"gamma", r.gamma},
            {"tau", r.tau},
            {"r", r.r},
            {"cutoff", r.cutoff},
            {"hit_fraction", r.hit_fraction},
            {"closed_form_bound", r.closed_form_bound},
            {"ci_halfwidth", r.ci_halfwidth},
            {"per_l", std::move(per_l)},
            {"seed", r.seed}};
}

Json to_json(const StabilityReport& r) {
    return {{"epsilon", r.epsilon},
            {"max_norm_ratio", r.max_norm_ratio},
            {"max_j_drift", r.max_j_drift},
            {"max_i_drift", r.max_i_drift},
            {"j_drift_scaled", r.j_drift_scaled},
            {"norm_ok", r.norm_ok},
            {"drift_ok", r.drift_ok}};
}

Json to_json(const PlannerSchedule& s) {
    return {{"feasible", s.feasible},
            {"min_epsilon", s.min_epsilon},
            {"r", s.r},
            {"gamma", s.gamma},
            {"tau", s.tau},
            {"s", s.s},
            {"horizon", s.horizon},
            {"log_gamma", s.log_gamma},
            {"log_horizon", s.log_horizon},
            {"log_min_epsilon", s.log_min_epsilon},
            {"description", s.description}};
}

std::string certificate_csv(const Certificate& c) {
    std::ostringstream os;
    os.precision(17);
    os << "l,chi_norm,disp_lhs,disp_rhs,z_lhs,z_rhs,rem_lhs,rem_rhs,ok\n";
    for (const auto& r : c.rows)
        os << r.l << ',' << r.chi_norm << ',' << r.disp_lhs << ',' << r.disp_rhs
           << ',' << r.z_lhs << ',' << r.z_rhs << ',' << r.rem_lhs << ','
           << r.rem_rhs << ',' << (r.ok ? 1 : 0) << '\n';
    return os.str();
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace bnf
