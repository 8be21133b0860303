#pragma once

#include <string>
#include <vector>

#include "orthobias/datagen.hpp"

namespace orthobias {

/*
 Dataset persistence. A dataset prefix P maps to
   P.csv        feature columns, sensitive columns, group column (when
                present) and the outcome column
   P.noise.csv  retained exogenous draws, written only for generated data
   P.meta.json  sidecar naming the sensitive/outcome/group columns, outcome
                type, descendant columns and generator parameters
*/
void write_dataset(const std::string& prefix, const Dataset& ds);
Dataset read_dataset(const std::string& prefix);

/*
 Ingests a free-form CSV given explicit column roles. Categorical columns are
 one-hot encoded with the first (sorted) category dropped; a categorical or
 small-cardinality first sensitive column also yields discrete group labels.
 The outcome is binary when its distinct values are {0,1} (or two categories).
*/
Dataset ingest_csv(const std::string& path, const std::vector<std::string>& sensitive_cols,
                   const std::string& outcome_col);

// Bare matrix helpers used by the transform command.
void write_matrix_csv(const std::string& path, const DataMatrix& m);
DataMatrix read_matrix_csv(const std::string& path);

}  // namespace orthobias
