"""
The theory graph of a library: one node per defined theory and one edge per
arrow its definition introduces, from the bigger theory to the smaller one.

    >>> from theory_combinators.combinators import load_library
    >>> env, _ = load_library('''
    ... Magma := Theory { U:type; *:(U,U) -> U }
    ... Semigroup := Magma extended by {
    ...   axiom associative_*: forall x,y,z:U. (x*y)*z = x*(y*z) }
    ... AdditiveSemigroup := Semigroup[* |-> +, associative_* |-> associative_+]
    ... ''')
    >>> graph = build_graph(env)
    >>> [(edge.source, edge.target, str(edge.kind)) for edge in graph.edges]
    [('Semigroup', 'Magma', 'extension'), ('AdditiveSemigroup', 'Semigroup', 'renaming')]
    >>> graph.edges[1].renamed
    (('*', '+'), ('associative_*', 'associative_+'))
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import graphviz

from theory_combinators.combinators import TheoryEnv, structural_arrows
from theory_combinators.context import Assignment, AssignmentClass, Context, classify
from theory_combinators.kernel import Expression, Label, render

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TheoryNode:
    name: str
    context: Context


@dataclass(frozen=True)
class TheoryEdge:
    source: str
    target: str
    arrow: Assignment

    @property
    def kind(self) -> AssignmentClass:
        return classify(self.arrow)

    @property
    def renamed(self) -> Tuple[Tuple[str, str], ...]:
        """The target labels that the arrow does not send to themselves."""
        return tuple(
            (label, _image(term))
            for label, term in self.arrow.mapping
            if term != Label(label))


def _image(term: Expression) -> str:
    return term.name if isinstance(term, Label) else render(term)


@dataclass(frozen=True)
class TheoryGraph:
    nodes: Tuple[TheoryNode, ...]
    edges: Tuple[TheoryEdge, ...]


def build_graph(env: TheoryEnv) -> TheoryGraph:
    nodes = tuple(TheoryNode(name, env[name].context) for name in env)
    edges: List[TheoryEdge] = []
    for name in env:
        for target, arrow in structural_arrows(name, env):
            edges.append(TheoryEdge(name, target, arrow))
    logger.debug('%d theories, %d arrows', len(nodes), len(edges))
    return TheoryGraph(nodes, tuple(edges))


def to_dot(graph: TheoryGraph) -> str:
    """
    Render the graph in the DOT language. Edges are labelled with their
    class and with the labels they rename:

    >>> from theory_combinators.combinators import load_library
    >>> env, _ = load_library('A := Theory { U:type; e:U }  B := A[e |-> 0]')
    >>> print(to_dot(build_graph(env)))  # doctest: +NORMALIZE_WHITESPACE
    digraph theories {
      A [label="A\\n2 entries"]
      B [label="B\\n2 entries"]
      B -> A [label="renaming\\ne |-> 0"]
    }
    <BLANKLINE>
    """
    dot = graphviz.Digraph('theories')
    for node in graph.nodes:
        dot.node(node.name, label=f'{node.name}\\n{len(node.context)} entries')
    for edge in graph.edges:
        lines = [str(edge.kind)] + [f'{label} |-> {image}' for label, image in edge.renamed]
        dot.edge(edge.source, edge.target, label='\\n'.join(lines))
    return dot.source


def to_json(graph: TheoryGraph) -> str:
    """
    Serialize the graph with stable keys:

    >>> from theory_combinators.combinators import load_library
    >>> env, _ = load_library('P := Theory { U:type; e:U }')
    >>> print(to_json(build_graph(env)))
    {
      "arrows": [],
      "theories": [
        {
          "entries": [
            {
              "classifier": "type",
              "label": "U",
              "sort": "Kind"
            },
            {
              "classifier": "U",
              "label": "e",
              "sort": "Type"
            }
          ],
          "name": "P",
          "size": 2
        }
      ]
    }
    """
    document: Dict[str, Any] = {
        'theories': [
            {
                'name': node.name,
                'size': len(node.context),
                'entries': [
                    {
                        'label': entry.label,
                        'classifier': render(entry.classifier),
                        'sort': str(node.context.sort_of(entry.label)),
                    }
                    for entry in node.context.entries
                ],
            }
            for node in graph.nodes
        ],
        'arrows': [
            {
                'source': edge.source,
                'target': edge.target,
                'class': str(edge.kind),
                'mapping': {label: _image(term) for label, term in edge.arrow.mapping},
            }
            for edge in graph.edges
        ],
    }
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)
