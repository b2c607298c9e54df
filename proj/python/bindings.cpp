#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "primorials/certificate.hpp"
#include "primorials/claims.hpp"
#include "primorials/cli/report.hpp"
#include "primorials/errors.hpp"
#include "primorials/next_prime.hpp"
#include "primorials/primality.hpp"
#include "primorials/primes.hpp"
#include "primorials/primorial.hpp"

namespace py = pybind11;
using namespace primorials;

// Python int <-> mpz_class through hex text. Slow for huge values but only
// crosses the boundary once per call.
namespace pybind11::detail {
template <>
struct type_caster<BigInt> {
  PYBIND11_TYPE_CASTER(BigInt, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    const std::string text = py::str(py::module_::import("builtins").attr("hex")(src));
    const bool neg = text[0] == '-';
    value.set_str(text.substr(neg ? 3 : 2), 16);
    if (neg) value = -value;
    return true;
  }

  static handle cast(const BigInt& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str(16).c_str(), nullptr, 16);
  }
};
}  // namespace pybind11::detail

namespace {

PipelinePolicy make_policy(std::uint64_t seed, unsigned rounds, std::uint64_t bit_cap, std::uint64_t trial) {
  PipelinePolicy p;
  p.seed = seed;
  p.mr_extra_rounds = rounds;
  p.proof_bit_cap = bit_cap;
  p.trial_bound = trial;
  return p;
}

py::dict to_dict(const Classification& c) {
  py::dict d;
  d["verdict"] = std::string(verdict_name(c.verdict));
  d["evidence"] = cli::evidence_summary(c);
  if (c.certificate) {
    d["certificate"] = serialize_certificate(*c.certificate);
  } else {
    d["certificate"] = py::none();
  }
  return d;
}

// keyword arguments shared by everything that runs the pipeline
#define POLICY_ARGS                                                                               \
  py::arg("seed") = 0, py::arg("mr_extra_rounds") = 8, py::arg("proof_bit_cap") = 4096, \
      py::arg("trial_bound") = 1'000'000

}  // namespace

PYBIND11_MODULE(primorials, m) {
  m.doc() = "Primorial primes p_n# +- 1: sieve, primality pipeline, certificates, scans.";

  // translators run newest first, so the subclass goes last
  auto& resource = py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<SearchCapExceeded>(m, "SearchCapExceeded", resource);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("sieve", [](std::uint64_t limit) { return sieve(limit).primes; }, py::arg("limit"));
  m.def("first_n_primes", [](std::size_t n) { return first_n_primes(n).primes; }, py::arg("n"));
  m.def("is_prime_word", &is_prime_word, py::arg("n"));

  m.def("primorial", [](std::size_t n) { return primorials::primorial(n); }, py::arg("n"));
  m.def(
      "candidates",
      [](std::size_t n) {
        const PrimorialCandidate c = candidates(n);
        return py::make_tuple(c.minus, c.plus);
      },
      py::arg("n"), "(p_n# - 1, p_n# + 1)");

  m.def("bpsw", &bpsw, py::arg("n"));
  m.def(
      "classify",
      [](const BigInt& n, std::uint64_t seed, unsigned rounds, std::uint64_t cap, std::uint64_t trial) {
        return to_dict(classify(n, make_policy(seed, rounds, cap, trial)));
      },
      py::arg("n"), POLICY_ARGS);

  m.def(
      "next_prime_above",
      [](const BigInt& x, std::uint64_t search_cap, std::uint64_t seed, unsigned rounds, std::uint64_t cap,
         std::uint64_t trial) {
        NextPrime r = next_prime_above(x, search_cap, make_policy(seed, rounds, cap, trial));
        return py::make_tuple(r.value, std::string(verdict_name(r.status.verdict)));
      },
      py::arg("x"), py::arg("search_cap") = 1'000'000, POLICY_ARGS);

  m.def(
      "verify_certificate",
      [](const std::string& text) {
        const VerifyResult r = verify_certificate_text(text);
        return py::make_tuple(r.accepted, std::string(reason_name(r.reason)));
      },
      py::arg("text"), "(accepted, reason) for a serialized certificate");

  m.def(
      "scan",
      [](std::size_t max_index, std::uint64_t seed, unsigned rounds, std::uint64_t cap, std::uint64_t trial,
         unsigned threads) {
        std::vector<ScanRow> rows;
        {
          py::gil_scoped_release release;
          rows = scan(max_index, make_policy(seed, rounds, cap, trial), threads);
        }
        py::list out;
        for (const ScanRow& r : rows) {
          py::dict d;
          d["n"] = r.index;
          d["p_n"] = r.nth_prime;
          d["plus"] = to_dict(r.plus_class);
          d["minus"] = to_dict(r.minus_class);
          out.append(d);
        }
        return out;
      },
      py::arg("max_index"), POLICY_ARGS, py::arg("threads") = 0);

  m.def(
      "check_disjointness",
      [](std::size_t n_max) {
        const ClaimReport r = check_disjointness(n_max);
        py::dict d;
        d["outcome"] = std::string(outcome_name(r.outcome));
        for (const auto& [k, v] : r.counts) d[py::str(k)] = v;
        return d;
      },
      py::arg("n_max"), "Checks that no p_k# + 1 equals any p_j# - 1 for k, j <= n_max");
}
