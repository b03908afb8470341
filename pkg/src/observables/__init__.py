"""Observables package"""
