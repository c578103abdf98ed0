"""
JSON schema of complex documents.

Group-ring elements are sparse lists of [element, coefficient] pairs,
matrices are lists of rows. A diagonal term
[column, left_degree, left_index, right_index, left_element,
right_element, coefficient] stands for coefficient·(g, h)(e_a ⊗ e_b) in
Δ(e_column).
"""
from typing import Any, Dict, List
from jsonschema import Draft7Validator
from pdcomplex.core.errors import DocumentError


FORMAT_VERSION = 'pdcomplex/1'

_ENTRY = {
    'type': 'array',
    'items': {'type': 'array', 'items': {'type': 'integer'},
              'minItems': 2, 'maxItems': 2}
}
_MATRIX = {'type': 'array', 'items': {'type': 'array', 'items': _ENTRY}}
_VECTOR = {'type': 'array', 'items': _ENTRY}
_LETTER = {'type': 'array', 'items': {'type': 'integer'},
           'minItems': 2, 'maxItems': 2}

DOCUMENT_SCHEMA: Dict[str, Any] = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'type': 'object',
    'required': ['format', 'kind', 'name', 'group'],
    'additionalProperties': False,
    'properties': {
        'format': {'const': FORMAT_VERSION},
        'kind': {'enum': ['pd_complex', 'two_type']},
        'name': {'type': 'string', 'minLength': 1},
        'group': {
            'type': 'object',
            'required': ['kind'],
            'additionalProperties': False,
            'properties': {
                'kind': {'enum': ['cyclic', 'table', 'presentation']},
                'order': {'type': 'integer', 'minimum': 1},
                'table': {'type': 'array',
                          'items': {'type': 'array',
                                    'items': {'type': 'integer'}}}
            },
            'if': {'properties': {'kind': {'const': 'cyclic'}}},
            'then': {'required': ['order']},
            'else': {
                'if': {'properties': {'kind': {'const': 'table'}}},
                'then': {'required': ['table']}
            }
        },
        'orientation': {'type': 'array',
                        'items': {'type': 'integer', 'enum': [0, 1]}},
        'ranks': {'type': 'array', 'items': {'type': 'integer', 'minimum': 0},
                  'minItems': 1},
        'boundaries': {'type': 'object',
                       'patternProperties': {'^[1-9][0-9]*$': _MATRIX},
                       'additionalProperties': False},
        'fundamental_cycle': {'type': 'array', 'items': {'type': 'integer'}},
        'diagonal': {
            'type': 'object',
            'patternProperties': {
                '^[0-9]+$': {'type': 'array',
                             'items': {'type': 'array',
                                       'items': {'type': 'integer'},
                                       'minItems': 7, 'maxItems': 7}}},
            'additionalProperties': False
        },
        'precrossed': {
            'type': 'object',
            'required': ['generators', 'relators'],
            'additionalProperties': False,
            'properties': {
                'generators': {'type': 'array', 'items': {'type': 'string'}},
                'relators': {
                    'type': 'array',
                    'items': {
                        'type': 'object',
                        'required': ['name', 'word'],
                        'additionalProperties': False,
                        'properties': {
                            'name': {'type': 'string'},
                            'word': {'type': 'array', 'items': _LETTER}
                        }
                    }
                }
            }
        },
        'b_generators': {'type': 'array', 'items': _VECTOR},
        'weakly_standard': {
            'type': 'object',
            'required': ['top_cell'],
            'additionalProperties': False,
            'properties': {
                'top_cell': {'type': 'integer', 'minimum': 0},
                'splitting': {'type': 'array', 'items': _VECTOR}
            }
        }
    },
    'if': {'properties': {'kind': {'const': 'pd_complex'}}},
    'then': {'required': ['orientation', 'ranks', 'boundaries',
                          'fundamental_cycle']},
    'else': {'required': ['precrossed']}
}

_VALIDATOR = Draft7Validator(DOCUMENT_SCHEMA)


def schema_errors(data: Any) -> List[DocumentError]:
    """Schema violations ordered by their JSON path."""
    errors = sorted(_VALIDATOR.iter_errors(data),
                    key=lambda e: [str(p) for p in e.absolute_path])
    return [DocumentError(error.message, list(error.absolute_path))
            for error in errors]


def validate_schema(data: Any) -> None:
    errors = schema_errors(data)
    if errors:
        raise errors[0]
