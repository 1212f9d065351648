#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <regex>
#include <sstream>

#include "lquot/afe.hpp"
#include "lquot/certify.hpp"
#include "lquot/polygamma.hpp"
#include "lquot/reduce.hpp"

using namespace lquot;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpq_class parse_rational(const std::string& text) {
    static const std::regex shape(R"([+-]?\d+(/\d+)?)");
    mpq_class q;
    if (!std::regex_match(text, shape) || q.set_str(text, 10) != 0)
        throw UsageError("not a rational number: '" + text + "'");
    if (q.get_den() == 0)
        throw UsageError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

bool rational_shaped(const std::string& text) {
    static const std::regex shape(R"([+-]?\d+(/\d+)?)");
    return std::regex_match(text, shape);
}

BigFloat parse_decimal(const std::string& text, Precision prec) {
    static const std::regex shape(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    if (!std::regex_match(text, shape))
        throw UsageError("not a number: '" + text + "'");
    return BigFloat(text, prec);
}

// Points are rationals ('5/2'), decimals ('5.7'), or 're,im' pairs.
CriticalPoint parse_point(const std::string& text, Precision prec) {
    if (rational_shaped(text))
        return CriticalPoint::exact(parse_rational(text));
    size_t comma = text.find(',');
    if (comma == std::string::npos)
        return CriticalPoint::floating(BigComplex(parse_decimal(text, prec)));
    return CriticalPoint::floating(BigComplex(
        parse_decimal(text.substr(0, comma), prec),
        parse_decimal(text.substr(comma + 1), prec)));
}

std::vector<mpq_class> parse_rational_list(const std::string& text) {
    std::vector<mpq_class> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rational(item));
    if (out.empty())
        throw UsageError("empty list: '" + text + "'");
    return out;
}

std::vector<long> parse_integer_list(const std::string& text) {
    std::vector<long> out;
    for (const mpq_class& q : parse_rational_list(text)) {
        if (q.get_den() != 1)
            throw UsageError("not an integer list: '" + text + "'");
        out.push_back(static_cast<long>(q.get_num().get_si()));
    }
    return out;
}

std::string num_str(const BigComplex& z) {
    if (z.is_real())
        return z.real().str(25);
    std::string im = z.imag().str(25);
    if (im[0] == '-')
        return z.real().str(25) + " - " + im.substr(1) + "*i";
    return z.real().str(25) + " + " + im + "*i";
}

// One record per check; jsonl mode prints the record, text mode the block.
struct Output {
    ordered_json rec = ordered_json::object();
    std::string text;
    int exit_code = 0;
};

void finish(const Output& out, bool jsonl) {
    if (jsonl)
        std::cout << out.rec.dump() << "\n";
    else
        std::cout << out.text;
}

Output from_certificate(const std::string& command, const Certificate& c) {
    Output out;
    out.rec["command"] = command;
    out.rec["inputs"] = c.inputs;
    if (c.claim == Claim::RankBound) {
        out.rec["value"] = "rank >= " + std::to_string(c.computed_rank);
        out.rec["verdict"] = c.certified() ? "Certified" : "NotCertified";
        out.rec["guarantee"] = c.guarantee;
        out.rec["computed-rank"] = c.computed_rank;
        out.rec["symbols"] = c.symbols;
    } else {
        out.rec["value"] = num_str(c.bound_value);
        out.rec["verdict"] = c.certified() ? "Certified" : "NotCertified";
        out.rec["margin"] = c.margin.str(25);
    }
    out.rec["precision_bits"] = c.precision_bits;
    out.rec["assumptions"] = c.assumptions;
    out.text = c.serialize();
    out.exit_code = c.certified() ? 0 : 1;
    return out;
}

// Family datum assembled from the shared option block.
struct DatumFlags {
    std::string family;
    long d = 0;
    std::string kappa;
    std::string k = "0";
    long N = 1;
    long D = 1;
    long n = 0;
    long dF = 1;
    long normN = 1;
    long g = 0;

    void add_options(CLI::App* cmd, bool with_family) {
        if (with_family)
            cmd->add_option("--family", family, "gld, modular, hilbert, or siegel")
                ->required();
        cmd->add_option("--d", d, "GL(d) degree (default: number of kappa)");
        cmd->add_option("--kappa", kappa, "comma-separated local parameters");
        cmd->add_option("--k", k, "weight (rational)");
        cmd->add_option("--N", N, "level / level norm");
        cmd->add_option("--D", D, "twist discriminant");
        cmd->add_option("--n", n, "base-field degree");
        cmd->add_option("--dF", dF, "field discriminant");
        cmd->add_option("--normN", normN, "ideal norm of the level");
        cmd->add_option("--g", g, "genus");
    }

    FamilyDatum build() const {
        if (family == "gld") {
            if (kappa.empty())
                throw UsageError("gld data need --kappa");
            std::vector<mpq_class> ks = parse_rational_list(kappa);
            long deg = d > 0 ? d : static_cast<long>(ks.size());
            return FamilyDatum::gld(deg, N, ks);
        }
        if (family == "modular")
            return FamilyDatum::modular(parse_rational(k), N, D);
        if (family == "hilbert") {
            mpq_class kq = parse_rational(k);
            if (kq.get_den() != 1)
                throw UsageError("hilbert weights are integers");
            return FamilyDatum::hilbert(static_cast<long>(kq.get_num().get_si()),
                                        n, dF, normN);
        }
        if (family == "siegel") {
            mpq_class kq = parse_rational(k);
            if (kq.get_den() != 1)
                throw UsageError("siegel weights are integers");
            return FamilyDatum::siegel(static_cast<long>(kq.get_num().get_si()), g);
        }
        throw UsageError("unknown family '" + family + "'");
    }

    std::string str(const FamilyDatum& fd) const {
        std::ostringstream os;
        os << "family=" << family_name(fd.family);
        switch (fd.family) {
        case Family::AutomorphicGLd: {
            os << " d=" << fd.d << " N=" << fd.N << " kappa=[";
            for (size_t j = 0; j < fd.kappa_rat.size(); ++j)
                os << (j ? "," : "") << fd.kappa_rat[j].get_str();
            os << "]";
            break;
        }
        case Family::ModularTwisted:
            os << " k=" << fd.k.get_str() << " N=" << fd.N << " D=" << fd.D;
            break;
        case Family::Hilbert:
            os << " k=" << fd.k.get_str() << " n=" << fd.n << " dF=" << fd.dF
               << " normN=" << fd.normN;
            break;
        case Family::Siegel:
            os << " k=" << fd.k.get_str() << " g=" << fd.g;
            break;
        }
        return os.str();
    }
};

int run(int argc, char** argv) {
    CLI::App app{"quotients of derivatives of L-functions: evaluation, "
                 "verification, and certificates"};
    app.require_subcommand(1);

    long bits = 128;
    std::string format = "text";
    app.add_option("--bits", bits, "working precision in bits (>= 64)");
    app.add_option("--format", format, "text or jsonl")
        ->check(CLI::IsMember({"text", "jsonl"}));

    // psi
    auto* psi_cmd = app.add_subcommand("psi", "evaluate psi^(m)(z)");
    long psi_m = 0;
    std::string psi_z;
    bool psi_exact = false;
    psi_cmd->add_option("--m", psi_m, "derivative order")->check(CLI::NonNegativeNumber);
    psi_cmd->add_option("--z", psi_z, "argument")->required();
    psi_cmd->add_flag("--exact", psi_exact, "reduce a rational argument symbolically");

    // closedform
    auto* cf_cmd = app.add_subcommand("closedform",
                                      "closed form of the quotient identity");
    DatumFlags cf_flags;
    cf_flags.add_options(cf_cmd, true);
    std::string cf_s0;
    long cf_m = 0;
    bool cf_exact = false;
    cf_cmd->add_option("--s0", cf_s0, "evaluation point")->required();
    cf_cmd->add_option("--m", cf_m, "derivative order")->check(CLI::NonNegativeNumber);
    cf_cmd->add_flag("--exact", cf_exact, "print the constant expression");

    // identity
    auto* id_cmd = app.add_subcommand("identity",
                                      "verify the identity against coefficients");
    std::string id_data, id_s0, id_cutoff = "1";
    long id_m = 0, id_terms = 0, id_tol = 0;
    id_cmd->add_option("--data", id_data, "coefficient file")->required();
    id_cmd->add_option("--s0", id_s0, "evaluation point")->required();
    id_cmd->add_option("--m", id_m, "derivative order")->check(CLI::NonNegativeNumber);
    id_cmd->add_option("--cutoff", id_cutoff, "smoothing split point X");
    id_cmd->add_option("--terms", id_terms, "cap on summed coefficients");
    id_cmd->add_option("--tol-exp", id_tol,
                       "demand residual < 2^-E (default E = bits/8)");

    // certify
    auto* ct_cmd = app.add_subcommand("certify", "non-vanishing certificates");
    ct_cmd->require_subcommand(1);
    auto* ct_gld = ct_cmd->add_subcommand("gld", "principal GL(d) bound");
    auto* ct_mod = ct_cmd->add_subcommand("modular", "twisted modular bound");
    auto* ct_half = ct_cmd->add_subcommand("halfint", "half-integral central bound");
    auto* ct_hil = ct_cmd->add_subcommand("hilbert", "Hilbert bound");
    auto* ct_sie = ct_cmd->add_subcommand("siegel", "Siegel bound");
    DatumFlags ct_flags[5];
    std::string ct_s0[5];
    bool ct_remark = false;
    CLI::App* ct_subs[5] = {ct_gld, ct_mod, ct_half, ct_hil, ct_sie};
    const char* ct_fams[5] = {"gld", "modular", "modular", "hilbert", "siegel"};
    for (int i = 0; i < 5; ++i) {
        ct_flags[i].family = ct_fams[i];
        ct_flags[i].add_options(ct_subs[i], false);
        if (i != 2)
            ct_subs[i]->add_option("--s0", ct_s0[i], "evaluation point")->required();
    }
    ct_mod->add_flag("--remark", ct_remark, "use the tightened-range remark bound");
    ct_gld->get_option("--N")->required();
    ct_gld->get_option("--kappa")->required();
    ct_mod->get_option("--k")->required();
    ct_half->get_option("--k")->required();
    ct_half->get_option("--N")->required();
    ct_hil->get_option("--k")->required();
    ct_hil->get_option("--n")->required();
    ct_hil->get_option("--dF")->required();
    ct_sie->get_option("--k")->required();
    ct_sie->get_option("--g")->required();

    // rank
    auto* rk_cmd = app.add_subcommand("rank", "linear-independence rank certificate");
    DatumFlags rk_flags;
    rk_flags.add_options(rk_cmd, true);
    std::string rk_J, rk_s0;
    long rk_q = 0;
    rk_cmd->add_option("--J", rk_J, "comma-separated level set (with --s0)");
    rk_cmd->add_option("--q", rk_q, "denominator of the coprime points a/q");
    rk_cmd->add_option("--s0", rk_s0, "evaluation point for the level set");

    // gen-coeffs
    auto* gc_cmd = app.add_subcommand("gen-coeffs", "write a bundled coefficient file");
    std::string gc_kind, gc_out;
    long gc_nmax = 2000;
    gc_cmd->add_option("--kind", gc_kind,
                       "delta, delta-twist5, chi5, or hilbert-delta")
        ->required();
    gc_cmd->add_option("--nmax", gc_nmax, "number of coefficients");
    gc_cmd->add_option("--out", gc_out, "output path")->required();

    for (CLI::App* sub : {psi_cmd, cf_cmd, id_cmd, ct_cmd, rk_cmd, gc_cmd})
        sub->fallthrough();
    for (CLI::App* sub : ct_subs)
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (bits < 64)
        throw UsageError("precision must be at least 64 bits");
    Precision prec(bits);
    bool jsonl = format == "jsonl";
    Output out;

    if (psi_cmd->parsed()) {
        out.rec["command"] = "psi";
        std::ostringstream in;
        in << "m=" << psi_m << " z=" << psi_z << (psi_exact ? " exact" : "");
        out.rec["inputs"] = in.str();
        if (psi_exact) {
            if (!rational_shaped(psi_z))
                throw UsageError("--exact needs a rational argument a/q");
            ConstExpr e = canonical_psi(psi_m, parse_rational(psi_z));
            out.rec["value"] = e.str();
            out.rec["precision_bits"] = 0;
            out.text = e.str() + "\n";
        } else {
            CriticalPoint z = parse_point(psi_z, prec);
            BigComplex v = polygamma(psi_m, z.numeric(prec));
            out.rec["value"] = num_str(v);
            out.rec["precision_bits"] = bits;
            out.text = num_str(v) + "\n";
        }
        out.rec["assumptions"] = ordered_json::array();
    } else if (cf_cmd->parsed()) {
        FamilyDatum fd = cf_flags.build();
        fd.validate();
        CriticalPoint s0 = parse_point(cf_s0, prec);
        out.rec["command"] = "closedform";
        std::ostringstream in;
        in << cf_flags.str(fd) << " s0=" << cf_s0 << " m=" << cf_m;
        out.rec["inputs"] = in.str();
        if (cf_exact) {
            ConstExpr e = cf_m == 0 ? closed_form_sum_exact(fd, s0)
                                    : closed_form_higher_exact(fd, s0, cf_m);
            out.rec["value"] = e.str();
            out.rec["precision_bits"] = 0;
            out.text = e.str() + "\n";
        } else {
            BigComplex v = cf_m == 0 ? closed_form_sum(fd, s0, prec)
                                     : closed_form_higher(fd, s0, cf_m, prec);
            out.rec["value"] = num_str(v);
            out.rec["precision_bits"] = bits;
            out.text = num_str(v) + "\n";
        }
        out.rec["assumptions"] = ordered_json::array();
    } else if (id_cmd->parsed()) {
        CoefficientSeries cs = load_coefficient_file(id_data);
        AFEConfig cfg;
        cfg.prec = prec;
        cfg.cutoff = parse_rational(id_cutoff);
        if (cfg.cutoff <= 0)
            throw UsageError("--cutoff must be positive");
        cfg.terms = id_terms;
        long tol_exp = std::numeric_limits<long>::min();
        if (id_tol != 0) {
            if (id_tol < 0 || id_tol > bits / 2)
                throw UsageError("--tol-exp must lie in [1, bits/2]");
            tol_exp = -id_tol;
        }
        IdentityReport rep =
            verify_identity(cs, parse_point(id_s0, prec), id_m, cfg, tol_exp);
        out.rec["command"] = "identity";
        std::ostringstream in;
        in << "data=" << id_data << " s0=" << id_s0 << " m=" << id_m
           << " cutoff=" << cfg.cutoff.get_str() << " terms=" << id_terms;
        out.rec["inputs"] = in.str();
        out.rec["residual"] = rep.residual.str(25);
        out.rec["verdict"] = rep.pass ? "pass" : "fail";
        out.rec["precision_bits"] = bits;
        out.rec["assumptions"] = ordered_json::array();
        std::ostringstream os;
        os << "m: " << rep.m << "\n"
           << "lhs: " << num_str(rep.lhs) << "\n"
           << "rhs: " << num_str(rep.rhs) << "\n"
           << "residual: " << rep.residual.str(25) << "\n"
           << "tolerance: " << rep.tolerance.str(25) << "\n"
           << "result: " << (rep.pass ? "pass" : "fail") << "\n";
        out.text = os.str();
        out.exit_code = rep.pass ? 0 : 1;
    } else if (ct_cmd->parsed()) {
        Certificate c;
        std::string name;
        if (ct_gld->parsed()) {
            FamilyDatum fd = ct_flags[0].build();
            c = certify_gld(fd, parse_point(ct_s0[0], prec), prec);
            name = "certify-gld";
        } else if (ct_mod->parsed()) {
            FamilyDatum fd = ct_flags[1].build();
            c = certify_modular(fd, parse_rational(ct_s0[1]), ct_remark, prec);
            name = "certify-modular";
        } else if (ct_half->parsed()) {
            c = certify_halfint_central(parse_rational(ct_flags[2].k),
                                        ct_flags[2].N, prec);
            name = "certify-halfint";
        } else if (ct_hil->parsed()) {
            FamilyDatum fd = ct_flags[3].build();
            c = certify_hilbert(fd, parse_rational(ct_s0[3]),
                                HilbertDiscriminantTable(), prec);
            name = "certify-hilbert";
        } else {
            mpq_class kq = parse_rational(ct_flags[4].k);
            if (kq.get_den() != 1)
                throw UsageError("siegel weights are integers");
            c = certify_siegel(static_cast<long>(kq.get_num().get_si()),
                               ct_flags[4].g, parse_rational(ct_s0[4]), prec);
            name = "certify-siegel";
        }
        out = from_certificate(name, c);
    } else if (rk_cmd->parsed()) {
        FamilyDatum fd = rk_flags.build();
        Certificate c;
        if (!rk_J.empty() && rk_q == 0) {
            if (rk_s0.empty())
                throw UsageError("--J needs --s0");
            std::vector<long> js = parse_integer_list(rk_J);
            c = rank_certificate(fd, IntegerSet{{js.begin(), js.end()}},
                                 parse_point(rk_s0, prec));
        } else if (rk_J.empty() && rk_q != 0) {
            c = rank_certificate_coprime(fd, rk_q);
        } else {
            throw UsageError("exactly one of --J or --q is required");
        }
        out = from_certificate("rank", c);
    } else if (gc_cmd->parsed()) {
        if (gc_nmax < 1)
            throw UsageError("--nmax must be positive");
        CoefficientSeries cs;
        if (gc_kind == "delta")
            cs = delta_series(gc_nmax);
        else if (gc_kind == "delta-twist5")
            cs = delta_twist5_series(gc_nmax);
        else if (gc_kind == "chi5")
            cs = character_mod5_series(gc_nmax);
        else if (gc_kind == "hilbert-delta")
            cs = hilbert_alias_delta(gc_nmax);
        else
            throw UsageError("unknown kind '" + gc_kind + "'");
        write_coefficient_file(gc_out, cs);
        out.rec["command"] = "gen-coeffs";
        std::ostringstream in;
        in << "kind=" << gc_kind << " nmax=" << gc_nmax << " out=" << gc_out;
        out.rec["inputs"] = in.str();
        out.rec["value"] = gc_out;
        out.rec["precision_bits"] = 0;
        out.rec["assumptions"] = ordered_json::array();
        out.text = "wrote " + gc_out + " (nmax=" + std::to_string(cs.nmax()) + ")\n";
    }

    finish(out, jsonl);
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "pole error: " << e.what() << "\n";
        return 3;
    } catch (const FileFormatError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return 4;
    } catch (const TruncationError& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 5;
    } catch (const ZeroValueError& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 5;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 5;
    } catch (const PropertyAError& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 5;
    } catch (const UnsupportedFamilyError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 5;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 5;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 6;
    }
}
