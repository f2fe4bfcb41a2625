"""Layer potentials for constant-coefficient second order operators in 2D."""

try:
    from . import _layerlab as _impl  # installed wheel layout
except ImportError:  # in-tree: extension sits on sys.path (build directory)
    import _layerlab as _impl

curve_nodes = _impl.curve_nodes
single_layer = _impl.single_layer
double_layer = _impl.double_layer
w_star = _impl.w_star
fundamental_solution = _impl.fundamental_solution
cylinder = _impl.cylinder
experiment_names = _impl.experiment_names
run_experiment = _impl.run_experiment
selftest = _impl.selftest

__all__ = [
    "curve_nodes",
    "single_layer",
    "double_layer",
    "w_star",
    "fundamental_solution",
    "cylinder",
    "experiment_names",
    "run_experiment",
    "selftest",
]
