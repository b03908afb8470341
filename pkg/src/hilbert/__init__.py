"""Hilbert space package"""
