#pragma once

#include "cyops/corpus.hpp"
#include "cyops/cy_checker.hpp"
#include "cyops/frobenius.hpp"
#include "cyops/indicial.hpp"
#include "cyops/n_integral.hpp"
#include "cyops/normal_form.hpp"
#include "cyops/operator.hpp"
#include "cyops/pade.hpp"
#include "cyops/parser.hpp"
#include "cyops/roots.hpp"
#include "cyops/self_dual.hpp"
#include "cyops/series.hpp"
#include "cyops/sym_power.hpp"
#include "cyops/transforms.hpp"
