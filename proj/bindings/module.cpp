// Python face of the engine: expression-driven higher-limit computations,
// linking-system classification, and the pinned acceptance battery.  Field
// names in returned dicts match the CLI's --json output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oblim/expr.hpp"
#include "oblim/fusion.hpp"
#include "oblim/verify.hpp"

namespace py = pybind11;

namespace {

oblim::Budgets budgets_of(uint64_t budget_chains) {
  oblim::Budgets b;
  if (budget_chains > 0) {
    b.chain_orbits = budget_chains;
    b.bar_chains = budget_chains;
  }
  return b;
}

std::vector<int> lambda_py(const std::string& group, const std::string& module, int p,
                           int max_i, const std::string& backend, uint64_t budget_chains) {
  auto px = oblim::parse_context(group, module);
  if (!px.module)
    throw oblim::ParseError("lambda needs a module: pass module= or a semidirect group");
  if (px.module->p != p) throw oblim::ParseError("module prime disagrees with p");
  auto r = oblim::lambda_dims(px.gamma, p, *px.module, max_i, backend,
                              budgets_of(budget_chains));
  return r.dims;
}

py::dict fusion_report_py(const std::string& group, int p, uint64_t budget_chains) {
  auto px = oblim::parse_context(group);
  if (!px.semidirect)
    throw oblim::ParseError("fusion_report needs a semidirect(...) group expression");
  if (px.module->p != p) throw oblim::ParseError("module prime disagrees with p");
  auto fc = oblim::fusion_context_semidirect(*px.module, group, px.module_text);
  auto rep = oblim::classify_linking_systems(fc, budgets_of(budget_chains));
  py::dict j;
  j["prime"] = rep.prime;
  j["group_spec"] = rep.group_spec;
  j["module_spec"] = rep.module_spec;
  j["lambda_dims"] = rep.lambda_dims;
  j["x_classes"] = rep.x_classes;
  j["y_classes"] = rep.y_classes;
  py::list table;
  for (const auto& row : rep.per_class_table) {
    py::dict rj;
    rj["rep"] = row.rep;
    rj["order"] = row.order;
    rj["outF_order"] = row.out_f_order;
    rj["zP_dim"] = row.zp_dim;
    rj["lambda_dims"] = row.lambda_dims;
    table.append(rj);
  }
  j["per_class_table"] = table;
  j["note"] = rep.note;
  return j;
}

uint64_t group_order_py(const std::string& group) {
  return oblim::parse_context(group).group->order();
}

py::list acceptance_py(bool include_stretch, double time_cap) {
  py::list rows;
  for (const auto& r : oblim::run_acceptance(include_stretch, time_cap)) {
    py::dict d;
    d["index"] = r.index;
    d["name"] = r.name;
    d["required"] = r.required;
    d["pass"] = r.pass;
    d["expected"] = r.expected;
    d["actual"] = r.actual;
    d["elapsed_s"] = r.elapsed_s;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(oblim, m) {
  m.doc() = "exact higher limits, fusion systems and linking-system checks";

  py::register_exception<oblim::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<oblim::BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<oblim::CheckError>(m, "CheckError", PyExc_RuntimeError);

  m.def("lambda_dims", &lambda_py, py::arg("group"), py::arg("module") = "",
        py::arg("p") = 2, py::arg("max_i") = 3, py::arg("backend") = "poset",
        py::arg("budget_chains") = uint64_t(0),
        "Higher-limit dimensions in degrees 0..max_i for the module named by\n"
        "the expressions.  backend is 'poset', 'bar' or 'both' (cross-checked).");

  m.def("fusion_report", &fusion_report_py, py::arg("group"), py::arg("p") = 2,
        py::arg("budget_chains") = uint64_t(0),
        "Classification counts and the per-class local table for the fusion\n"
        "system of a semidirect(...) group.");

  m.def("group_order", &group_order_py, py::arg("group"),
        "Order of the group named by the expression.");

  m.def("acceptance", &acceptance_py, py::arg("include_stretch") = false,
        py::arg("time_cap") = 0.0,
        "Run the pinned acceptance battery; one dict per criterion.");
}
