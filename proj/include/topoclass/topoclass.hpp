#pragma once

#include "topoclass/bottleneck.hpp"
#include "topoclass/classifier.hpp"
#include "topoclass/harness/evaluate.hpp"
#include "topoclass/harness/json_io.hpp"
#include "topoclass/harness/rng.hpp"
#include "topoclass/harness/svg.hpp"
#include "topoclass/harness/synth.hpp"
#include "topoclass/logreg.hpp"
#include "topoclass/pca.hpp"
#include "topoclass/persistence.hpp"
#include "topoclass/pointcloud.hpp"
#include "topoclass/rfe.hpp"
#include "topoclass/signal.hpp"
#include "topoclass/summaries.hpp"
#include "topoclass/union_find.hpp"
#include "topoclass/vietoris_rips.hpp"
