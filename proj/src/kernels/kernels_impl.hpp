#pragma once

#include "seqmeta/kernels.hpp"

namespace seqmeta::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(SEQMETA_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(SEQMETA_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace seqmeta::kernels::detail
