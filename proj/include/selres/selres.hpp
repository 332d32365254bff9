#pragma once

#include "selres/config.hpp"
#include "selres/corpus.hpp"
#include "selres/error.hpp"
#include "selres/estimator.hpp"
#include "selres/evaluator.hpp"
#include "selres/io.hpp"
#include "selres/learner.hpp"
#include "selres/measures.hpp"
#include "selres/random.hpp"
#include "selres/taxonomy.hpp"
