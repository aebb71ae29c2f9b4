#pragma once

#include <string>
#include <vector>

#include "thresholdlab/errors.hpp"

namespace tlab {

// One auxiliary quantity attached to a record (Y_0, Y_1, rho, ...). `form`
// is empty when the source prints only a decimal; `form_value` is the form
// evaluated independently of the stored decimal.
struct aux_entry {
    std::string name;
    double value = 0;
    std::string form;
    double form_value = 0;
};

struct threshold_record {
    std::string source;  // table1 | table2 | table4 | section8
    int kappa = 0;
    std::string label;
    double value = 0;
    std::string closed_form;  // empty when the source prints only a decimal
    double closed_form_value = 0;
    std::vector<aux_entry> aux;
    bool no_solutions = false;  // explicit "no solutions listed" marker
};

struct sigma_verdict_record {
    int kappa = 0;
    int band = 0;
    std::vector<int> indices;
    bool expected_valid = false;
};

// Embedded datasets. Sources: "table1" (18 band energies), "table2" (14
// threshold solutions plus 3 empty-case markers), "table4" (8 first-band
// rows), "section8" (71 threshold values).
const std::vector<threshold_record>& load_dataset(const std::string& source);

// Every index-set verdict in the reference corpus, including the chosen
// valid combinations.
const std::vector<sigma_verdict_record>& sigma_verdicts();

struct integrity_report {
    int checks = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Evaluates every stored closed form against its decimal, re-derives the
// tabulated energies and coefficients, and verifies the structural
// invariants of the lists.
integrity_report check_integrity();

// CSV with columns source,kappa,label,value,closed_form,aux_json.
std::string dataset_to_csv(const std::vector<threshold_record>& records);
std::vector<threshold_record> dataset_from_csv(const std::string& csv);

}  // namespace tlab
