#pragma once

#include "bootcorr/kernels.hpp"

namespace bootcorr::kernels::detail {

extern const Table scalar_table;
#if defined(BOOTCORR_HAVE_AVX2)
extern const Table avx2_table;
#endif

}  // namespace bootcorr::kernels::detail
