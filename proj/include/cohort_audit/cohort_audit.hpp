#pragma once

// Umbrella header for the cohort-audit toolkit.

#include "cohort_audit/config.hpp"
#include "cohort_audit/detectors.hpp"
#include "cohort_audit/evidence.hpp"
#include "cohort_audit/ingest.hpp"
#include "cohort_audit/levels.hpp"
#include "cohort_audit/lsh.hpp"
#include "cohort_audit/minhash.hpp"
#include "cohort_audit/pipeline.hpp"
#include "cohort_audit/report.hpp"
#include "cohort_audit/rubric.hpp"
#include "cohort_audit/scs_cn.hpp"
#include "cohort_audit/shingle.hpp"
#include "cohort_audit/similarity.hpp"
#include "cohort_audit/textprep.hpp"
#include "cohort_audit/tfidf.hpp"
#include "cohort_audit/transcript.hpp"
#include "cohort_audit/unicode.hpp"
