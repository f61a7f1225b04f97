"""The four reference queries the parser must accept verbatim."""

IMPUTE_QUERY = """SELECT *,
    COALESCE(age, 50) AS age_imputed
FROM diabetes_data;
"""

ENCODE_QUERY = """SELECT *,
    CASE WHEN gender = 'Male' THEN 1 ELSE 0 END AS gender_male,
    CASE WHEN gender = 'Female' THEN 1 ELSE 0 END AS gender_female
FROM diabetes_data;
"""

CORRELATION_QUERY = """SELECT CORR(feature_value, diabetes_binary) AS correlation
FROM diabetes_data;
"""

TRAIN_QUERY = """CREATE OR REPLACE MODEL `project_id.dataset_id.diabetes_model`
OPTIONS(
  model_type = 'boosted_tree_classifier',
  input_label_cols = ['Diabetes_binary'],
  data_split_method = 'RANDOM',
  data_split_eval_fraction = 0.2,
  max_iterations = 150,
  learn_rate = 0.05,
  min_rel_progress = 0.00001,
  l1_reg = 0.1,
  l2_reg = 2.0
) AS
SELECT
  *
FROM
  `project_id.dataset_id.diabetes_data`
WHERE
  Diabetes_binary IS NOT NULL;
"""

ALL_REFERENCE_QUERIES = (IMPUTE_QUERY, ENCODE_QUERY, CORRELATION_QUERY, TRAIN_QUERY)

TRAIN_QUERY_OPTIONS = {
    "model_type": "boosted_tree_classifier",
    "input_label_cols": ("Diabetes_binary",),
    "data_split_method": "RANDOM",
    "data_split_eval_fraction": 0.2,
    "max_iterations": 150,
    "learn_rate": 0.05,
    "min_rel_progress": 0.00001,
    "l1_reg": 0.1,
    "l2_reg": 2.0,
}
