#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line front end
"""
from .documents import (InstanceSchemaError, dump_document,
                        instance_digest, instance_to_document, load_document,
                        parse_document, parse_instance, parse_tolerances,
                        parse_vector, result_document, save_document,
                        serialize_instance)
