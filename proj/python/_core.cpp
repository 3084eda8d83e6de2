#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "easyqg/category.hpp"
#include "easyqg/cumulants.hpp"
#include "easyqg/errors.hpp"
#include "easyqg/models.hpp"
#include "easyqg/verify.hpp"
#include "easyqg/weingarten.hpp"

namespace py = pybind11;
using namespace easyqg;

namespace {

// Rationals cross the boundary as fractions.Fraction; inputs may be Fraction,
// int or "p/q" strings.
py::object to_py(const Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

py::object to_py(const Integer& z) { return py::int_(py::str(z.get_str())); }

Rational from_py(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

std::vector<Rational> from_py_list(const py::iterable& xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.push_back(from_py(x));
    return out;
}

template <class T>
py::list to_py_list(const std::vector<T>& xs) {
    py::list out;
    for (const auto& x : xs) out.append(to_py(x));
    return out;
}

template <class T>
py::list to_py_matrix(const Matrix<T>& m) {
    py::list out;
    for (const auto& row : m) out.append(to_py_list(row));
    return out;
}

std::vector<std::string> texts(const std::vector<SetPartition>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

Category cat(const std::string& tag) { return parse_category(tag); }
SetPartition part(const std::string& text) { return SetPartition::parse(text); }

py::dict table_dict(const WeingartenTable& t) {
    py::dict d;
    d["category"] = std::string(to_string(t.category));
    d["k"] = t.k;
    d["n"] = t.n;
    d["partitions"] = texts(t.partitions);
    d["gram"] = to_py_matrix(t.gram);
    d["weingarten"] = to_py_matrix(t.weingarten);
    d["mobius"] = t.mobius;
    return d;
}

py::dict report_dict(const VerifyReport& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["ok"] = r.ok();
    d["checks"] = r.checks;
    d["violations"] = r.violations;
    return d;
}

py::dict gap_dict(const GapResult& g) {
    py::dict d;
    d["lhs"] = to_py(g.lhs);
    d["rhs"] = to_py(g.rhs);
    d["gap"] = to_py(g.gap);
    return d;
}

// Single-variable sequence or {word tuple: value} map into a word function.
template <class F>
F word_function(const py::object& data) {
    F f;
    if (py::isinstance<py::dict>(data)) {
        for (auto [key, value] : data.cast<py::dict>()) {
            Word w = py::isinstance<py::str>(key) ? parse_word(key.template cast<std::string>())
                                                   : key.template cast<Word>();
            f.order_max = std::max<int>(f.order_max, static_cast<int>(w.size()));
            f.values.emplace(std::move(w), from_py(value));
        }
    } else {
        const auto seq = from_py_list(data);
        static_cast<WordFunction&>(f) = WordFunction::from_sequence(seq);
    }
    return f;
}

py::object word_function_out(const WordFunction& f) {
    if (f.single_variable) return to_py_list(f.sequence());
    py::dict d;
    for (const auto& [w, v] : f.values) d[py::tuple(py::cast(w))] = to_py(v);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Weingarten calculus, cumulants and de Finetti gaps for easy quantum groups.";

    // Raised for every library error; `code` carries the stable error tag.
    static py::handle error_type = py::exception<Error>(m, "EasyqgError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error_type(e.what());
            exc.attr("code") = e.code();
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.attr("CATEGORIES") = py::make_tuple("O", "S", "H", "B", "O*", "H*", "O+", "S+", "H+", "B+");
    m.def("k_max", &k_max);
    m.def("set_k_max", &set_k_max, py::arg("value"));

    // partitions
    m.def("enumerate_all", [](int k) { return texts(enumerate_all(k)); }, py::arg("k"));
    m.def("enumerate_family", [](const std::string& c, int k) { return texts(enumerate_family(cat(c), k)); },
          py::arg("cat"), py::arg("k"));
    m.def("is_refinement", [](const std::string& a, const std::string& b) { return is_refinement(part(a), part(b)); },
          py::arg("pi"), py::arg("sigma"));
    m.def("join", [](const std::string& a, const std::string& b) { return join(part(a), part(b)).to_string(); },
          py::arg("pi"), py::arg("sigma"));
    m.def("meet", [](const std::string& a, const std::string& b) { return meet(part(a), part(b)).to_string(); },
          py::arg("pi"), py::arg("sigma"));
    m.def("kernel", [](const Word& w) { return kernel(w).to_string(); }, py::arg("word"));
    m.def("is_noncrossing", [](const std::string& p) { return is_noncrossing(part(p)); }, py::arg("pi"));
    m.def("is_balanced", [](const std::string& p) { return is_balanced(part(p)); }, py::arg("pi"));
    m.def(
        "mobius",
        [](const std::optional<std::string>& c, int k, const std::string& a, const std::string& b) {
            return c ? mobius(cat(*c), k, part(a), part(b)) : mobius_full(k, part(a), part(b));
        },
        py::arg("cat"), py::arg("k"), py::arg("pi"), py::arg("sigma"),
        "Moebius function of D(k); cat=None means all of P(k).");

    // weingarten
    m.def("gram", [](const std::string& c, int k, long n) { return to_py_matrix(gram(cat(c), k, n)); },
          py::arg("cat"), py::arg("k"), py::arg("n"));
    m.def("weingarten_table", [](const std::string& c, int k, long n) { return table_dict(*weingarten_table(cat(c), k, n)); },
          py::arg("cat"), py::arg("k"), py::arg("n"));
    m.def("haar_integral",
          [](const std::string& c, long n, const Word& i, const Word& j) { return to_py(haar_integral(cat(c), n, i, j)); },
          py::arg("cat"), py::arg("n"), py::arg("i"), py::arg("j"));
    m.def(
        "asymptotic_residual",
        [](const std::string& c, int k, long n) { return to_py(asymptotic_residual(cat(c), k, n).max); },
        py::arg("cat"), py::arg("k"), py::arg("n"), "Maximum of |n^{|pi|} W - mu| over comparable pairs.");
    m.def(
        "ck_constant",
        [](const std::string& c, int k, long n_max) {
            const auto r = ck_constant(cat(c), k, n_max);
            py::dict d;
            d["ck"] = to_py(r.ck);
            d["argmax_n"] = r.argmax_n;
            py::list trace;
            for (const auto& s : r.trace) trace.append(py::make_tuple(s.n, s.value ? to_py(*s.value) : py::none()));
            d["trace"] = trace;
            return d;
        },
        py::arg("cat"), py::arg("k"), py::arg("n_max"));

    // cumulants
    m.def(
        "moments_to_cumulants",
        [](const std::string& species, const py::object& moments) {
            return word_function_out(moments_to_cumulants(parse_species(species), word_function<MomentFunctional>(moments)));
        },
        py::arg("species"), py::arg("moments"),
        "Sequence (orders 1..r) or {word: value} map in, same shape out.");
    m.def(
        "cumulants_to_moments",
        [](const std::string& species, const py::object& cumulants) {
            auto c = word_function<CumulantFamily>(cumulants);
            c.species = parse_species(species);
            return word_function_out(cumulants_to_moments(c));
        },
        py::arg("species"), py::arg("cumulants"));
    m.def(
        "law_moments",
        [](const std::string& kind, const py::object& mean, const py::object& variance, int order) {
            const LawKind k = kind == "gaussian"     ? LawKind::Gaussian
                              : kind == "semicircle" ? LawKind::Semicircle
                              : kind == "rayleigh_sym"
                                  ? LawKind::RayleighSym
                                  : throw ParseError("unknown law '" + kind + "'");
            return to_py_list(law_moments({k, from_py(mean), from_py(variance)}, order));
        },
        py::arg("kind"), py::arg("mean"), py::arg("variance"), py::arg("order"));

    // models
    m.def(
        "group_integral_exact",
        [](const std::string& group, int n, const Word& i, const Word& j) {
            const FiniteFamily f = group == "S" ? FiniteFamily::S
                                   : group == "H" ? FiniteFamily::H
                                                  : throw ParseError("group must be S or H");
            return to_py(group_integral_exact({f, n}, i, j));
        },
        py::arg("group"), py::arg("n"), py::arg("i"), py::arg("j"));
    m.def(
        "group_integral_mc",
        [](const std::string& group, int n, const Word& i, const Word& j, std::size_t samples, std::uint64_t seed) {
            const ContinuousFamily f = group == "O" ? ContinuousFamily::O
                                       : group == "B" ? ContinuousFamily::B
                                                      : throw ParseError("group must be O or B");
            MCEstimate e;
            {
                py::gil_scoped_release release;
                e = group_integral_mc(f, n, i, j, {samples, seed, 0});
            }
            return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("group"), py::arg("n"), py::arg("i"), py::arg("j"), py::arg("samples") = 100000, py::arg("seed"),
        "(estimate, standard error); deterministic for a fixed seed.");
    m.def("parity_normal_form", &parity_normal_form, py::arg("word"), "None when the kernel is unbalanced.");
    m.def(
        "half_model_moment",
        [](const std::map<int, py::list>& even, const Word& w) {
            HalfModelSpec spec;
            for (const auto& [v, xs] : even) spec.even_moments[v] = from_py_list(xs);
            return to_py(half_model_moment(spec, w));
        },
        py::arg("even_moments"), py::arg("word"));
    m.def("urn_gap", [](const py::iterable& urn, const Word& j) { return gap_dict(urn_definetti_gap(from_py_list(urn), j)); },
          py::arg("urn"), py::arg("word"));
    m.def("sphere_gap", [](int n, const Word& j) { return gap_dict(sphere_definetti_gap(n, j)); }, py::arg("n"),
          py::arg("word"));

    // invariant suites
    m.def("verify_west", [](const std::string& c, int k, long n_max) { return report_dict(verify_west(cat(c), k, n_max)); },
          py::arg("cat"), py::arg("k"), py::arg("n_max") = 64);
    m.def("verify_moebius", [](const std::string& c, int k) { return report_dict(verify_moebius(cat(c), k)); },
          py::arg("cat"), py::arg("k"));
    m.def("verify_half_model", [](int order) { return report_dict(verify_half_model(order)); }, py::arg("order") = 6);
}
