# Torus orbifold equivariant cohomology toolkit
__version__ = "0.1.0"
