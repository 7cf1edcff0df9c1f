import matplotlib.pyplot as pp
import networkx as nx
import numpy as np
from . import fusions as fus
from . import orbits as orb
from . import queries as qrs

__all__ = [
    'plot_loss_curves', 'plot_height_profile', 'draw_graph', 'draw_protocol',
]


def _finish(file_name, halt):
    if file_name:
        pp.savefig(file_name)
    if halt:
        pp.show()


def plot_loss_curves(curves, title='', file_name=None, halt=True):
    """Plots logical loss rates against the physical loss rate together with the break-even
    line.

    Args:
        curves: Dictionary from label to LossCurve.
        title: Plot title.
        file_name: Save the figure to this file.
        halt: Halt script execution until plot window is closed.

    Returns:
        Axes of the plot.
    """

    epsilon = np.linspace(0, 1, 201)
    pp.figure()
    axes = pp.gca()
    axes.plot(epsilon, epsilon, color='black', linestyle='--', label='unencoded')
    for label, curve in curves.items():
        threshold = curve.threshold()
        axes.plot(epsilon, curve(epsilon), label='{} ($\\epsilon^*$ = {:.3f})'.format(label,
                                                                                   threshold))
    axes.set_xlim(0, 1)
    axes.set_ylim(0, 1)
    axes.set_xlabel('physical loss rate $\\epsilon$')
    axes.set_ylabel('logical loss rate')
    axes.set_title(title)
    axes.legend()
    pp.grid(True)
    _finish(file_name, halt)
    return axes


def plot_height_profile(profile, baseline=None, file_name=None, halt=True):
    """Plots a height function over the number of emitted qubits.

    Args:
        profile: HeightProfile.
        baseline: Number of emitters drawn as a horizontal line.
        file_name: Save the figure to this file.
        halt: Halt script execution until plot window is closed.

    Returns:
        Axes of the plot.
    """

    pp.figure()
    axes = pp.gca()
    axes.step(range(len(profile.values)), profile.values, where='mid', color='black')
    axes.plot(profile.values, 'o', color='black')
    if baseline is not None:
        axes.axhline(baseline, color='grey', linestyle='--')
    axes.set_xticks(range(len(profile.values)))
    axes.set_xticklabels([''] + [str(v) for v in profile.order])
    axes.set_xlabel('vertex order')
    axes.set_ylabel('entanglement entropy')
    pp.grid(True)
    _finish(file_name, halt)
    return axes


def draw_graph(graph, highlight=(), axes=None, title='', file_name=None, halt=True):
    """Draws a graph with labeled vertices.

    Args:
        graph: Graph to draw.
        highlight: Vertices drawn in a second color, e.g. a fused pair.
        axes: Axes to draw into. Defaults to a new figure.
        title: Plot title.
        file_name: Save the figure to this file.
        halt: Halt script execution until plot window is closed.

    Returns:
        Axes of the plot.
    """

    if axes is None:
        pp.figure()
        axes = pp.gca()
    network = graph.to_networkx()
    colors = ['tab:red' if v in highlight else 'tab:blue' for v in network.nodes]
    nx.draw_networkx(network, pos=nx.kamada_kawai_layout(network) if graph.n > 1 else None,
                     ax=axes, node_color=colors, font_color='white')
    axes.set_title(title)
    axes.set_axis_off()
    _finish(file_name, halt)
    return axes


def draw_protocol(protocol, file_name=None, halt=True):
    """Draws the initial graph and the graph before and after every fusion of a protocol.

    Args:
        protocol: ConstructionProtocol.
        file_name: Save the figure to this file.
        halt: Halt script execution until plot window is closed.

    Returns:
        Array of axes.
    """

    snapshots = [(protocol.initial, (), 'initial')]
    graph = protocol.initial
    for step in protocol.steps:
        if isinstance(step, qrs.LCStep):
            graph = orb.local_complement(graph, step.vertex)
        else:
            snapshots.append((graph, (step.a, step.b), str(step)))
            graph = fus.fuse_graph(graph, step.a, step.b).graph
    snapshots.append((graph.relabel(protocol.final_map), (), 'target'))
    _, axes = pp.subplots(1, len(snapshots), figsize=(3 * len(snapshots), 3), squeeze=False)
    for ax, (snapshot, highlight, title) in zip(axes[0], snapshots):
        draw_graph(snapshot, highlight, ax, title, halt=False)
    _finish(file_name, halt)
    return axes[0]
