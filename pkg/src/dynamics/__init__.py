"""Dynamics package"""
