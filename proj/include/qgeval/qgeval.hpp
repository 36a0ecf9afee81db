#pragma once

// Umbrella header for the question-generation evaluation library.

#include "qgeval/bleu.hpp"
#include "qgeval/corpus_io.hpp"
#include "qgeval/meta.hpp"
#include "qgeval/meteor.hpp"
#include "qgeval/porter.hpp"
#include "qgeval/report_io.hpp"
#include "qgeval/rouge.hpp"
#include "qgeval/scorers.hpp"
#include "qgeval/synth.hpp"
#include "qgeval/tokens.hpp"
