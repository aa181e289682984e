"""Article documents: native trees, the schema, fragments and encodings."""

from .bridge import frag_from_value, frag_value, node_from_value, node_value, nodes_from_value, nodes_value
from .nodes import Base, Children, FragNode, Node, Text, elim_frags, is_block, node, text_content, walk
from .schema import SchemaViolation, errors_only, is_article, validate_article
