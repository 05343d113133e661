#pragma once

#include "halfplane/core.hpp"
#include "halfplane/fields.hpp"
#include "halfplane/field_io.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/fft.hpp"
#include "halfplane/transforms.hpp"
#include "halfplane/norms.hpp"
#include "halfplane/extension.hpp"
#include "halfplane/linear_ivp.hpp"
#include "halfplane/ibvp.hpp"
#include "halfplane/oracle.hpp"
#include "halfplane/datagen.hpp"
#include "halfplane/nls.hpp"
#include "halfplane/verify.hpp"
