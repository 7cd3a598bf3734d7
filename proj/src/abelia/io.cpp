#include "abelia/io.hpp"

#include <fstream>
#include <sstream>

namespace abelia {

using ordered_json = nlohmann::ordered_json;

namespace {

Rational parse_rational_field(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        try {
            return rational_from_string(v.get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorKind::Parse, where + ": " + e.what());
        }
    }
    throw Error(ErrorKind::Parse, where + ": expected an integer or a rational string");
}

GQ parse_scalar(const nlohmann::json& v, const std::string& where) {
    if (v.is_array()) {
        if (v.size() != 2) throw Error(ErrorKind::Parse, where + ": complex scalar needs [re, im]");
        return GQ(parse_rational_field(v[0], where + "[re]"), parse_rational_field(v[1], where + "[im]"));
    }
    return GQ(parse_rational_field(v, where));
}

QVector parse_covector(const nlohmann::json& v, unsigned g, const std::string& where) {
    if (!v.is_array() || v.size() != g)
        throw Error(ErrorKind::Parse, where + ": expected " + std::to_string(g) + " components");
    QVector out(g);
    for (unsigned k = 0; k < g; ++k) out[k] = parse_scalar(v[k], where + "[" + std::to_string(k) + "]");
    return out;
}

QMatrix parse_matrix(const nlohmann::json& v, unsigned rows, unsigned cols, const std::string& where) {
    if (!v.is_array() || v.size() != rows)
        throw Error(ErrorKind::Parse, where + ": expected " + std::to_string(rows) + " rows");
    QMatrix m(rows, cols);
    for (unsigned r = 0; r < rows; ++r) {
        const auto& row = v[r];
        if (!row.is_array() || row.size() != cols)
            throw Error(ErrorKind::Parse, where + ": row " + std::to_string(r) + " needs " +
                                              std::to_string(cols) + " entries");
        for (unsigned c = 0; c < cols; ++c)
            m(r, c) = parse_scalar(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

ordered_json module_json(const CohomologyModule& m, unsigned order_hint) {
    ordered_json out;
    out["free_rank"] = m.free_rank;
    ordered_json tor = ordered_json::array();
    for (const auto& [a, k] : m.torsion) tor.push_back(ordered_json::array({a, k}));
    out["torsion"] = tor;
    out["dim_c"] = m.finite_dimensional() ? ordered_json(m.dim_c().get_str()) : ordered_json("inf");
    out["structure"] = m.str();
    (void)order_hint;
    return out;
}

std::string opt_str(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "inf"; }

ordered_json header_json(const char* command, long seed) {
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["seed"] = seed;
    return doc;
}

ValidationReport full_validation(const QuantumAHData& data) {
    ValidationReport rep = validate(data.ah, data.lattice);
    if (data.poisson.m.rows() != data.lattice.g || data.poisson.m.cols() != data.lattice.g)
        rep.issues.push_back({"poisson", "bivector must be g x g"});
    else if (!data.poisson.is_antisymmetric())
        rep.issues.push_back({"poisson", "bivector is not antisymmetric"});
    else if (rep.ok() && !compatibility(data.ah.h, data.poisson))
        rep.issues.push_back({"compatibility", "Poisson compatibility fails: H^T Pi H != 0"});
    for (const auto& [m, l] : data.l_series)
        if (m < 1) rep.issues.push_back({"l_series", "series indices start at 1"});
    return rep;
}

ordered_json validation_json(const ValidationReport& rep) {
    ordered_json out;
    out["ok"] = rep.ok();
    ordered_json issues = ordered_json::array();
    for (const auto& issue : rep.issues) {
        ordered_json it;
        it["code"] = issue.code;
        it["message"] = issue.message;
        issues.push_back(it);
    }
    out["issues"] = issues;
    return out;
}

ordered_json invariants_json(const TheoremContext& ctx) {
    ordered_json inv;
    inv["t"] = opt_str(ctx.t);
    inv["t0"] = opt_str(ctx.t0);
    inv["g0"] = ctx.deg.g0;
    inv["k"] = ctx.cls.k;
    inv["h_classical"] = ctx.cls.hbar_mult.get_str();
    inv["case"] = case_tag_name(ctx.tag());
    inv["constant_deformation"] = ctx.constant_deformation;
    return inv;
}

}  // namespace

std::string RunResult::json() const { return doc.dump(2) + "\n"; }

InputDescription parse_input(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Parse, "input: expected a JSON object");
    if (j.contains("schema") && j["schema"].get<int>() != kSchema)
        throw Error(ErrorKind::Parse, "input: unsupported schema version");
    if (!j.contains("g")) throw Error(ErrorKind::Parse, "input: missing field g");

    InputDescription in;
    unsigned g = j["g"].get<unsigned>();
    if (g == 0 || g > 8) throw Error(ErrorKind::Parse, "input: g must be between 1 and 8");
    in.data.lattice.g = g;

    if (!j.contains("lattice")) throw Error(ErrorKind::Parse, "input: missing field lattice");
    const auto& lat = j["lattice"];
    if (!lat.is_array() || lat.size() != 2 * g)
        throw Error(ErrorKind::Parse, "input: lattice needs 2g generators");
    for (unsigned i = 0; i < 2 * g; ++i)
        in.data.lattice.generators.push_back(
            parse_covector(lat[i], g, "lattice[" + std::to_string(i) + "]"));

    if (!j.contains("H")) throw Error(ErrorKind::Parse, "input: missing field H");
    in.data.ah.h.m = parse_matrix(j["H"], g, g, "H");

    if (!j.contains("chi")) throw Error(ErrorKind::Parse, "input: missing field chi");
    const auto& chi = j["chi"];
    if (!chi.is_array() || chi.size() != 2 * g)
        throw Error(ErrorKind::Parse, "input: chi needs 2g phases");
    for (unsigned i = 0; i < 2 * g; ++i)
        in.data.ah.chi.phases.push_back(parse_rational_field(chi[i], "chi[" + std::to_string(i) + "]"));

    if (!j.contains("poisson")) throw Error(ErrorKind::Parse, "input: missing field poisson");
    in.data.poisson.m = parse_matrix(j["poisson"], g, g, "poisson");

    if (j.contains("l_series")) {
        const auto& ls = j["l_series"];
        if (!ls.is_object()) throw Error(ErrorKind::Parse, "input: l_series must be an object");
        for (auto it = ls.begin(); it != ls.end(); ++it) {
            long m = 0;
            try {
                std::size_t pos = 0;
                m = std::stol(it.key(), &pos);
                if (pos != it.key().size()) m = 0;
            } catch (...) {
                m = 0;
            }
            if (m < 1) throw Error(ErrorKind::Parse, "input: l_series key '" + it.key() +
                                                         "' is not a positive integer");
            in.data.l_series[static_cast<unsigned>(m)] =
                parse_covector(it.value(), g, "l_series[" + it.key() + "]");
        }
    }
    if (j.contains("hbar_order")) in.hbar_order = j["hbar_order"].get<unsigned>();
    if (j.contains("seed")) in.seed = j["seed"].get<long>();
    return in;
}

InputDescription parse_input_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Parse, "cannot read input file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_input(ss.str());
}

unsigned default_order(const TheoremContext& ctx) {
    if (ctx.t0) return *ctx.t0 + 3;
    if (ctx.t) return *ctx.t + 3;
    return 3;
}

long resolve_seed(const RunOptions& opts, const InputDescription& input) {
    if (opts.seed) return *opts.seed;
    if (input.seed) return *input.seed;
    return 1;
}

RunResult run_validate(const InputDescription& input, const RunOptions& opts) {
    RunResult res;
    long seed = resolve_seed(opts, input);
    res.doc = header_json("validate", seed);
    ValidationReport rep = full_validation(input.data);
    res.doc["validation"] = validation_json(rep);
    res.status = rep.ok() ? 0 : 2;
    std::ostringstream txt;
    if (rep.ok()) {
        txt << "input is valid: Hermitian integrality, lattice rank and Poisson compatibility hold\n";
    } else {
        txt << "validation failed:\n";
        for (const auto& issue : rep.issues) txt << "  [" << issue.code << "] " << issue.message << "\n";
    }
    res.text = txt.str();
    return res;
}

namespace {

// shared front half of every computing command: validate, build context,
// settle the truncation order
struct Prepared {
    TheoremContext ctx;
    unsigned order = 0;
};

std::optional<RunResult> prepare(const InputDescription& input, const RunOptions& opts,
                                 const char* command, long seed, Prepared& out) {
    ValidationReport rep = full_validation(input.data);
    if (!rep.ok()) {
        RunResult res;
        res.doc = header_json(command, seed);
        res.doc["validation"] = validation_json(rep);
        res.status = 2;
        std::ostringstream txt;
        txt << "validation failed:\n";
        for (const auto& issue : rep.issues) txt << "  [" << issue.code << "] " << issue.message << "\n";
        res.text = txt.str();
        return res;
    }
    out.ctx = make_context(input.data);
    out.order = opts.hbar_order ? *opts.hbar_order
                                : (input.hbar_order ? *input.hbar_order : default_order(out.ctx));
    if (out.ctx.t0 && out.order < *out.ctx.t0 + 2) {
        RunResult res;
        res.doc = header_json(command, seed);
        res.doc["validation"] = validation_json(rep);
        res.doc["error"] = "truncation too small: hbar order must be at least t0 + 2 = " +
                           std::to_string(*out.ctx.t0 + 2);
        res.status = 2;
        res.text = res.doc["error"].get<std::string>() + "\n";
        return res;
    }
    return std::nullopt;
}

std::string dim_cell(const CohomologyModule& m) {
    return m.finite_dimensional() ? m.dim_c().get_str() : "inf";
}

}  // namespace

RunResult run_cohomology(const InputDescription& input, const RunOptions& opts) {
    long seed = resolve_seed(opts, input);
    Prepared prep;
    if (auto early = prepare(input, opts, "cohomology", seed, prep)) return *early;
    const TheoremContext& ctx = prep.ctx;

    RunResult res;
    res.doc = header_json("cohomology", seed);
    res.doc["validation"] = validation_json(ValidationReport{});
    res.doc["hbar_order"] = prep.order;
    res.doc["invariants"] = invariants_json(ctx);

    ordered_json mods = ordered_json::array();
    std::ostringstream txt;
    txt << "case: " << case_tag_name(ctx.tag()) << "\n";
    txt << "t = " << opt_str(ctx.t) << ", t0 = " << opt_str(ctx.t0) << ", g0 = " << ctx.deg.g0
        << ", k = " << ctx.cls.k << ", h_classical = " << ctx.cls.hbar_mult.get_str() << "\n";
    txt << "degree | dim_C | structure\n";
    for (unsigned j = 0; j <= ctx.g(); ++j) {
        if (opts.degree && static_cast<int>(j) != *opts.degree) continue;
        CohomologyModule m = cohomology(ctx, j);
        ordered_json row;
        row["degree"] = j;
        row["module"] = module_json(m, prep.order);
        mods.push_back(row);
        txt << "     " << j << " | " << dim_cell(m) << " | " << m.str() << "\n";
    }
    res.doc["modules"] = mods;
    res.text = txt.str();
    return res;
}

RunResult run_oracle(const InputDescription& input, const RunOptions& opts) {
    long seed = resolve_seed(opts, input);
    Prepared prep;
    if (auto early = prepare(input, opts, "oracle", seed, prep)) return *early;
    const TheoremContext& ctx = prep.ctx;

    CohomologyReport rep = cross_check(ctx, prep.order, opts.selftest_patch_formula);

    RunResult res;
    res.doc = header_json("oracle", seed);
    res.doc["validation"] = validation_json(ValidationReport{});
    res.doc["hbar_order"] = prep.order;
    res.doc["invariants"] = invariants_json(ctx);
    res.doc["degeneration_page"] = rep.degeneration_page;
    ordered_json rows = ordered_json::array();
    std::ostringstream txt;
    txt << "case: " << case_tag_name(rep.tag) << ", degeneration page " << rep.degeneration_page
        << "\n";
    txt << "degree | formula | smith | spectral | agree\n";
    for (unsigned j = 0; j < rep.degrees.size(); ++j) {
        const DegreeReport& dr = rep.degrees[j];
        ordered_json row;
        row["degree"] = j;
        row["formula"] = module_json(dr.formula, prep.order);
        row["smith"] = module_json(dr.smith, prep.order);
        row["spectral"] = module_json(dr.spectral, prep.order);
        row["agree"] = dr.agree;
        rows.push_back(row);
        txt << "     " << j << " | " << dr.formula.str() << " | " << dr.smith.str() << " | "
            << dr.spectral.str() << " | " << (dr.agree ? "yes" : "NO") << "\n";
    }
    res.doc["agreement"] = rows;
    res.doc["all_agree"] = rep.all_agree;
    ordered_json notes = ordered_json::array();
    for (const auto& n : rep.notes) notes.push_back(n);
    res.doc["notes"] = notes;
    if (!rep.all_agree) {
        txt << "DISAGREEMENT:\n";
        for (const auto& n : rep.notes) txt << "  " << n << "\n";
    } else {
        txt << "all routes agree\n";
    }
    res.text = txt.str();
    res.status = rep.all_agree ? 0 : 4;
    return res;
}

RunResult run_cocycles(const InputDescription& input, const RunOptions& opts) {
    long seed = resolve_seed(opts, input);
    Prepared prep;
    if (auto early = prepare(input, opts, "cocycles", seed, prep)) return *early;
    const TheoremContext& ctx = prep.ctx;

    RunResult res;
    res.doc = header_json("cocycles", seed);
    res.doc["validation"] = validation_json(ValidationReport{});
    res.doc["hbar_order"] = prep.order;
    res.doc["invariants"] = invariants_json(ctx);

    unsigned degree = opts.degree ? static_cast<unsigned>(std::max(0, *opts.degree)) : 1;
    res.doc["degree"] = degree;
    std::ostringstream txt;
    ordered_json items = ordered_json::array();

    bool verified_scope = ctx.data.ah.h.m.is_zero();
    if (verified_scope)
        for (const auto& r : ctx.data.ah.chi.phases) {
            Rational half = r / 2;
            verified_scope = verified_scope && half.get_den() == 1;
        }

    if (!verified_scope) {
        res.doc["mode"] = "emit-only";
        res.doc["warning"] =
            "outside the trivial-bundle scope: classical classes appear as opaque b^r symbols and no "
            "residual check runs";
        txt << res.doc["warning"].get<std::string>() << "\n";
        for (const auto& line : emit_formal_cocycles(ctx.data, degree)) {
            items.push_back(line);
            txt << "  " << line << "\n";
        }
        res.doc["cocycles"] = items;
        res.text = txt.str();
        return res;
    }

    res.doc["mode"] = "verified";
    std::vector<LatticeCochain> cocycles;
    if (ctx.t) cocycles = build_basis_cocycles(ctx.data, degree, prep.order);
    auto af = std::make_shared<AutomorphyFactor>(ctx.data, prep.order);
    auto act = twisted_action(af);
    auto tuples = sample_tuples(ctx.g(), degree + 1, opts.samples, static_cast<unsigned long>(seed));
    bool all_zero = true;
    txt << "degree " << degree << ": " << cocycles.size() << " cocycles ("
        << (ctx.t ? std::to_string(*ctx.t) : "0") << " * C(" << ctx.g() << "-1," << degree
        << "-1))\n";
    for (const auto& f : cocycles) {
        LatticeCochain df = delta(f, act, ctx.data.lattice);
        bool zero = true;
        for (const auto& t : tuples) zero = zero && df(t).is_zero();
        all_zero = all_zero && zero;
        ordered_json item;
        item["expression"] = f.family;
        item["residual_zero"] = zero;
        item["samples"] = opts.samples;
        items.push_back(item);
        txt << "  " << f.family << "  [delta^Phi residual "
            << (zero ? "0 on " + std::to_string(opts.samples) + " tuples" : "NONZERO") << "]\n";
    }
    res.doc["cocycles"] = items;
    res.doc["all_residuals_zero"] = all_zero;
    if (!all_zero) res.status = 1;
    res.text = txt.str();
    return res;
}

RunResult run_spectral(const InputDescription& input, const RunOptions& opts) {
    long seed = resolve_seed(opts, input);
    Prepared prep;
    if (auto early = prepare(input, opts, "spectral", seed, prep)) return *early;
    const TheoremContext& ctx = prep.ctx;

    RunResult res;
    res.doc = header_json("spectral", seed);
    res.doc["validation"] = validation_json(ValidationReport{});
    res.doc["hbar_order"] = prep.order;
    res.doc["invariants"] = invariants_json(ctx);

    ModelComplex model = model_complex(ctx);
    std::ostringstream txt;
    ordered_json pages = ordered_json::array();
    unsigned degeneration = 1;
    if (model.mult > 0) {
        SpectralEngine engine(model.filtered(prep.order));
        degeneration = engine.degeneration_page();
        unsigned rmax = opts.dump_pages > 0 ? opts.dump_pages : engine.width() + 1;
        for (unsigned r = 1; r <= rmax; ++r) {
            auto dims = engine.page_dims(r);
            ordered_json page;
            page["r"] = r;
            ordered_json spots = ordered_json::array();
            txt << "page E_" << r << ":";
            for (const auto& [pq, dim] : dims) {
                ordered_json spot;
                spot["p"] = pq.first;
                spot["q"] = pq.second;
                spot["dim"] = dim;
                spot["truncation_affected"] =
                    engine.truncation_affected(pq.first, ctx.t0 ? *ctx.t0 : 0);
                spots.push_back(spot);
                txt << "  (" << pq.first << "," << pq.second << ")=" << dim;
            }
            txt << "\n";
            page["spots"] = spots;
            pages.push_back(page);
        }
    } else {
        txt << "the model complex is zero (vanishing case)\n";
    }
    res.doc["pages"] = pages;
    res.doc["degeneration_page"] = degeneration;
    txt << "degeneration page: " << degeneration << "\n";
    res.text = txt.str();
    return res;
}

}  // namespace abelia
