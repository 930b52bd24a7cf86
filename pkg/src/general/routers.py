from core.methods.router import CommandRouter
from modules.bodies.api import router as bodies_router
from modules.functionals.api import router as functionals_router
from modules.mesh.api import router as mesh_router
from modules.optimizer.api import router as optimizer_router
from modules.verification.api import router as verification_router

router = CommandRouter()
router.include_router(verification_router)
router.include_router(functionals_router)
router.include_router(optimizer_router)
router.include_router(mesh_router)
router.include_router(bodies_router)
