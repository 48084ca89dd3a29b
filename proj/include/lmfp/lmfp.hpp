#pragma once

#include "lmfp/classifiers/model.hpp"
#include "lmfp/core/error.hpp"
#include "lmfp/core/io.hpp"
#include "lmfp/core/random.hpp"
#include "lmfp/corpus/corpus.hpp"
#include "lmfp/eval/metrics.hpp"
#include "lmfp/eval/pca.hpp"
#include "lmfp/eval/sweeps.hpp"
#include "lmfp/features/embeddings.hpp"
#include "lmfp/features/feature_set.hpp"
#include "lmfp/features/glove.hpp"
#include "lmfp/features/gltr.hpp"
#include "lmfp/features/scaler.hpp"
#include "lmfp/features/writeprints.hpp"
#include "lmfp/pipeline/pipeline.hpp"
#include "lmfp/simgen/simgen.hpp"
#include "lmfp/textstats/correlation.hpp"
#include "lmfp/textstats/lexical.hpp"
#include "lmfp/textstats/quality.hpp"
#include "lmfp/textstats/vocab.hpp"
#include "lmfp/version.hpp"
